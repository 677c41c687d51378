#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "kvol/exterior.hpp"
#include "kvol/matrix.hpp"

namespace kvol {

/// Input error with a 1-based line/column position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>>;

inline Mode mode_of(const AnyMatrix& m) {
  return std::holds_alternative<Matrix<Rational>>(m) ? Mode::exact
                                                     : Mode::floating;
}

/// True for tokens an exact-by-default reader accepts: integers, p/q
/// ratios, and plain terminating decimals. Exponent notation pushes the
/// whole input to float mode.
bool exact_eligible_token(const std::string& token);

/// Parses an integer, ratio, or decimal literal as an exact rational;
/// decimals become exact ratios (0.25 -> 1/4). A zero denominator is a
/// parse error naming it.
Rational parse_rational(const std::string& token);

double parse_double(const std::string& token);

/// Matrix text format: one row per line, whitespace-separated entries,
/// blank lines and '#' comments ignored, dimensions inferred. Arithmetic
/// mode is exact when every token is exact-eligible, unless forced.
AnyMatrix parse_matrix(std::istream& in, std::optional<Mode> forced = {});
AnyMatrix parse_matrix(const std::string& text, std::optional<Mode> forced = {});

template <ScalarType T>
std::string format_matrix(const Matrix<T>& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += " ";
      out += format_scalar(m(i, j));
    }
    out += "\n";
  }
  return out;
}

/// One "{I} <value>" line per coordinate, lexicographic order.
template <ScalarType T>
std::string format_multivector(const Multivector<T>& x) {
  std::string out;
  const auto sets = k_subsets(x.ambient(), x.grade());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out += to_string(sets[i]) + " " + format_scalar(x.coords()[i]) + "\n";
  }
  return out;
}

/// Header line documenting the source dimensions and grade, then the
/// entries in matrix text format.
template <ScalarType T>
std::string format_compound(const CompoundMatrix<T>& c) {
  std::string out = "# compound n=" + std::to_string(c.base_rows) +
                    " k=" + std::to_string(c.base_cols) +
                    " i=" + std::to_string(c.grade) + "\n";
  out += format_matrix(c.entries);
  return out;
}

}  // namespace kvol
