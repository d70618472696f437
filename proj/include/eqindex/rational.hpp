#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace eqindex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace eqindex
