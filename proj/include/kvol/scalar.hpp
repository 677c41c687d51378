#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace kvol {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Mode { exact, floating };

/// The two scalar modes every kernel is generic over: exact rationals
/// (always normalized, q > 0) and finite IEEE binary64.
template <class T>
concept ScalarType = std::same_as<T, Rational> || std::same_as<T, double>;

template <ScalarType T>
constexpr Mode mode_of() {
  if constexpr (std::same_as<T, Rational>) {
    return Mode::exact;
  } else {
    return Mode::floating;
  }
}

inline const char* mode_name(Mode m) {
  return m == Mode::exact ? "exact" : "float";
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline void require_finite(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("non-finite float entry rejected");
  }
}
inline void require_finite(const Rational&) {}

template <ScalarType T>
T scalar_abs(const T& x) {
  if constexpr (std::same_as<T, double>) {
    return std::fabs(x);
  } else {
    return x < 0 ? T(-x) : x;
  }
}

/// 17 significant digits: enough to round-trip any binary64 value.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_scalar(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += "/" + denominator(x).str();
  }
  return s;
}

inline std::string format_scalar(double x) { return format_double(x); }

}  // namespace kvol
