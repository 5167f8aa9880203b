#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace qcf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", integers and plain decimals ("-0.375", "2.5e-1"); decimals
// are converted exactly.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);

double to_double(const Rational& x);

// Exact conversion of a finite double.
Rational from_double(double x);

inline Rational rat(long long p, long long q = 1) { return Rational(p, q); }

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return qcf::to_double(x); }
};

// Exact zero test for rationals, absolute tolerance for doubles.
template <class T>
bool is_zero(const T& x, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return x == 0;
  } else {
    return std::fabs(x) <= tol;
  }
}

template <class T>
T scalar_from(const Rational& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    return to_double(x);
  }
}

}  // namespace qcf
