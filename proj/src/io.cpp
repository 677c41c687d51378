#include "kvol/io.hpp"

#include <cctype>
#include <sstream>

namespace kvol {

namespace {

bool is_plain_integer(const std::string& s) {
  std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// [+-]? digits [. digits] with at least one digit somewhere; exponent
// handled separately by the caller.
bool is_plain_decimal(const std::string& s) {
  std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

struct SplitNumber {
  std::string mantissa;
  std::string exponent;  // empty when absent
};

SplitNumber split_exponent(const std::string& s) {
  const auto e = s.find_first_of("eE");
  if (e == std::string::npos) return {s, ""};
  return {s.substr(0, e), s.substr(e + 1)};
}

Integer pow10(long p) {
  Integer x = 1;
  for (long i = 0; i < p; ++i) x *= 10;
  return x;
}

// cpp_int treats a leading 0 as an octal prefix; parse decimal digit
// strings with the sign and leading zeros stripped.
Integer decimal_integer(const std::string& s) {
  std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  const bool negative = !s.empty() && s[0] == '-';
  while (i + 1 < s.size() && s[i] == '0') ++i;
  Integer v(s.substr(i));
  return negative ? Integer(-v) : v;
}

}  // namespace

bool exact_eligible_token(const std::string& token) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    return is_plain_integer(token.substr(0, slash)) &&
           is_plain_integer(token.substr(slash + 1));
  }
  return is_plain_integer(token) || is_plain_decimal(token);
}

Rational parse_rational(const std::string& token) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const std::string num = token.substr(0, slash);
    const std::string den = token.substr(slash + 1);
    if (!is_plain_integer(num) || !is_plain_integer(den)) {
      throw std::invalid_argument("malformed ratio '" + token + "'");
    }
    const Integer d = decimal_integer(den);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in '" + token + "'");
    }
    return Rational(decimal_integer(num), d);
  }

  const auto [mantissa, exponent] = split_exponent(token);
  long exp = 0;
  if (!exponent.empty()) {
    if (!is_plain_integer(exponent)) {
      throw std::invalid_argument("malformed exponent in '" + token + "'");
    }
    try {
      exp = std::stol(exponent);
    } catch (const std::exception&) {
      throw std::invalid_argument("exponent out of range in '" + token + "'");
    }
  }
  if (!is_plain_integer(mantissa) && !is_plain_decimal(mantissa)) {
    throw std::invalid_argument("invalid numeric entry '" + token + "'");
  }

  const auto dot = mantissa.find('.');
  std::string digits = mantissa;
  long frac_len = 0;
  if (dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    frac_len = static_cast<long>(mantissa.size() - dot - 1);
    if (digits.empty() || digits == "+" || digits == "-") {
      throw std::invalid_argument("invalid numeric entry '" + token + "'");
    }
  }

  Rational value{decimal_integer(digits)};
  const long net = exp - frac_len;
  if (net > 0) {
    value *= Rational(pow10(net));
  } else if (net < 0) {
    value /= Rational(pow10(-net));
  }
  return value;
}

double parse_double(const std::string& token) {
  if (token.find('/') != std::string::npos) {
    return to_double(parse_rational(token));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid numeric entry '" + token + "'");
  }
  if (used != token.size()) {
    throw std::invalid_argument("invalid numeric entry '" + token + "'");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite entry '" + token + "'");
  }
  return v;
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<std::vector<Token>> tokenize(std::istream& in) {
  std::vector<std::vector<Token>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);

    std::vector<Token> row;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      row.push_back(Token{line.substr(start, i - start), lineno,
                          static_cast<int>(start) + 1});
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AnyMatrix parse_matrix(std::istream& in, std::optional<Mode> forced) {
  const auto rows = tokenize(in);
  const int n = static_cast<int>(rows.size());
  const int k = n == 0 ? 0 : static_cast<int>(rows.front().size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) {
      throw ParseError("row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(k),
                       row.front().line, row.front().column);
    }
  }

  Mode mode = Mode::exact;
  if (forced) {
    mode = *forced;
  } else {
    for (const auto& row : rows) {
      for (const auto& tok : row) {
        if (!exact_eligible_token(tok.text)) {
          mode = Mode::floating;
          break;
        }
      }
      if (mode == Mode::floating) break;
    }
  }

  if (mode == Mode::exact) {
    std::vector<Rational> entries;
    entries.reserve(static_cast<std::size_t>(n) * k);
    for (const auto& row : rows) {
      for (const auto& tok : row) {
        try {
          entries.push_back(parse_rational(tok.text));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), tok.line, tok.column);
        }
      }
    }
    return Matrix<Rational>(n, k, std::move(entries));
  }

  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * k);
  for (const auto& row : rows) {
    for (const auto& tok : row) {
      try {
        entries.push_back(parse_double(tok.text));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), tok.line, tok.column);
      }
    }
  }
  return Matrix<double>(n, k, std::move(entries));
}

AnyMatrix parse_matrix(const std::string& text, std::optional<Mode> forced) {
  std::istringstream in(text);
  return parse_matrix(in, forced);
}

}  // namespace kvol
