#include "kvol/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kvol/content.hpp"
#include "kvol/exterior.hpp"
#include "kvol/geometry.hpp"
#include "kvol/matrix.hpp"

namespace kvol {

namespace {

using Rng = std::mt19937_64;

Matrix<Rational> random_exact(Rng& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Rational(dist(rng));
  }
  return m;
}

Matrix<double> random_float(Rng& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix<double> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

std::string repro(const std::string& suite, int trials, std::uint64_t seed) {
  std::ostringstream os;
  os << "reproduce with: kvol verify --suite " << suite << " --trials "
     << trials << " --seed " << seed;
  return os.str();
}

bool trial_pythagorean(Rng& rng, std::string& why) {
  std::uniform_int_distribution<int> ndist(1, 10);
  const int n = ndist(rng);
  std::uniform_int_distribution<int> kdist(1, n);
  const int k = kdist(rng);
  const auto a = random_exact(rng, n, k, -9, 9);
  const auto report = pythagorean_check(a);
  if (report.residual != 0) {
    why = "nonzero exact residual " + format_scalar(report.residual) +
          " on a " + std::to_string(n) + "x" + std::to_string(k) + " matrix";
    return false;
  }
  return true;
}

bool trial_functoriality(Rng& rng, std::string& why) {
  std::uniform_int_distribution<int> dim(1, 6);
  const int n = dim(rng), m = dim(rng), k = dim(rng);
  const auto a = random_exact(rng, n, m, -4, 4);
  const auto b = random_exact(rng, m, k, -4, 4);
  const auto ab = mat_mul(a, b);
  const int top = std::min(n, std::min(m, k));
  for (int i = 0; i <= top; ++i) {
    const auto lhs = compound(ab, i);
    const auto rhs = mat_mul(compound(a, i).entries, compound(b, i).entries);
    if (lhs.entries != rhs) {
      why = "compound(AB," + std::to_string(i) +
            ") != compound(A)compound(B) for dims " + std::to_string(n) + "," +
            std::to_string(m) + "," + std::to_string(k);
      return false;
    }
  }
  return true;
}

bool trial_adjoint(Rng& rng, std::string& why) {
  std::uniform_int_distribution<int> dim(1, 6);
  const int n = dim(rng), k = dim(rng);
  const auto a = random_exact(rng, n, k, -4, 4);
  const int top = std::min(n, k);
  for (int i = 0; i <= top; ++i) {
    if (compound(transpose(a), i).entries != transpose(compound(a, i).entries)) {
      why = "compound(A^t," + std::to_string(i) + ") != compound(A," +
            std::to_string(i) + ")^t for a " + std::to_string(n) + "x" +
            std::to_string(k) + " matrix";
      return false;
    }
  }
  return true;
}

bool trial_multiplicativity(Rng& rng, std::string& why) {
  for (;;) {
    const auto l = random_float(rng, 5, 2);
    const auto e = random_float(rng, 3, 2);
    if (rank_of(l) != 2 || rank_of(e) != 2) continue;  // regenerate
    const auto report = multiplicativity_check(l, e);
    if (report.relative_gap > 1e-10) {
      why = "relative gap " + format_double(report.relative_gap) +
            " exceeds 1e-10";
      return false;
    }
    return true;
  }
}

bool trial_degua(Rng& rng, std::string& why) {
  std::uniform_real_distribution<double> logdist(-3.0, 3.0);
  const double a = std::pow(10.0, logdist(rng));
  const double b = std::pow(10.0, logdist(rng));
  const double c = std::pow(10.0, logdist(rng));
  const auto report = de_gua_check(a, b, c);
  if (report.relative_residual > 1e-12) {
    why = "de Gua residual " + format_double(report.relative_residual) +
          " exceeds 1e-12 at (" + format_double(a) + "," + format_double(b) +
          "," + format_double(c) + ")";
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"pythagorean", "functoriality", "adjoint", "multiplicativity",
          "degua"};
}

VerifyResult run_suite(const std::string& suite, int trials,
                       std::uint64_t seed) {
  bool (*trial)(Rng&, std::string&) = nullptr;
  if (suite == "pythagorean") {
    trial = trial_pythagorean;
  } else if (suite == "functoriality") {
    trial = trial_functoriality;
  } else if (suite == "adjoint") {
    trial = trial_adjoint;
  } else if (suite == "multiplicativity") {
    trial = trial_multiplicativity;
  } else if (suite == "degua") {
    trial = trial_degua;
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  VerifyResult result{suite, trials, seed, 0, ""};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::string why;
    if (!trial(rng, why)) {
      ++result.failures;
      if (result.first_failure.empty()) {
        result.first_failure =
            "trial " + std::to_string(t) + ": " + why + "; " +
            repro(suite, trials, seed);
      }
    }
  }
  return result;
}

}  // namespace kvol
