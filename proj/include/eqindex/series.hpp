#pragma once

#include <stdexcept>
#include <vector>

#include "eqindex/graded.hpp"
#include "eqindex/rational.hpp"

namespace eqindex {

/// One-variable power series with exact rational coefficients, truncated at a
/// fixed order.  Used for the characteristic-form series (z/2)/sinh(z/2) and
/// friends; substitution happens by matrix/nilpotent evaluation elsewhere.
class RatSeries {
 public:
  explicit RatSeries(int order) : c_(order + 1, Rational(0)) {}

  int order() const { return int(c_.size()) - 1; }
  Rational& operator[](int k) { return c_[k]; }
  const Rational& operator[](int k) const { return c_[k]; }

  friend RatSeries operator+(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
    return r;
  }
  friend RatSeries operator-(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
    return r;
  }
  friend RatSeries operator*(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i)
      for (int j = 0; i + j <= r.order(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }

  /// Multiplicative inverse; requires nonzero constant term.
  RatSeries inverse() const {
    if (c_[0] == 0) throw std::domain_error("RatSeries: inverse needs c0 != 0");
    RatSeries r(order());
    r[0] = Rational(1) / c_[0];
    for (int n = 1; n <= order(); ++n) {
      Rational s = 0;
      for (int k = 1; k <= n; ++k) s += c_[k] * r[n - k];
      r[n] = -s / c_[0];
    }
    return r;
  }

  /// log of a series with constant term 1.
  RatSeries log() const {
    if (c_[0] != 1) throw std::domain_error("RatSeries: log needs c0 == 1");
    // log(a) = integral of a'/a
    RatSeries q = derivative() * inverse();
    RatSeries r(order());
    for (int n = 1; n <= order(); ++n) r[n] = q[n - 1] / n;
    return r;
  }

  /// exp of a series with constant term 0.
  RatSeries exp() const {
    if (c_[0] != 0) throw std::domain_error("RatSeries: exp needs c0 == 0");
    RatSeries r(order());
    r[0] = 1;
    for (int n = 1; n <= order(); ++n) {
      Rational s = 0;
      for (int k = 1; k <= n; ++k) s += Rational(k) * c_[k] * r[n - k];
      r[n] = s / n;
    }
    return r;
  }

  RatSeries derivative() const {
    RatSeries r(order());
    for (int n = 0; n < order(); ++n) r[n] = Rational(n + 1) * c_[n + 1];
    return r;
  }

  /// Evaluate on a nilpotent ring element.
  GradedElem eval_nilpotent(const GradedElem& x, int hard_cap = 64) const {
    GradedElem sum = GradedElem::identity(x.space()) * Scalar::from_rational(c_[0]);
    GradedElem pw = GradedElem::identity(x.space());
    for (int k = 1; k <= order(); ++k) {
      pw = pw * x;
      if (pw.is_zero()) return sum;
      if (k > hard_cap) throw std::domain_error("RatSeries: argument not nilpotent");
      sum += pw * Scalar::from_rational(c_[k]);
    }
    if (!(pw * x).is_zero())
      throw std::domain_error("RatSeries: truncation order too small for argument");
    return sum;
  }

 private:
  std::vector<Rational> c_;
};

/// sinh(z/2)/(z/2) = sum z^{2m} / (4^m (2m+1)!).
inline RatSeries sinh_half_ratio(int order) {
  RatSeries s(order);
  Rational four_m = 1;
  for (int m = 0; 2 * m <= order; ++m) {
    s[2 * m] = Rational(1) / (four_m * factorial(2 * m + 1));
    four_m *= 4;
  }
  return s;
}

/// sin(z/2)/(z/2): alternating version (used as an independent test oracle).
inline RatSeries sin_half_ratio(int order) {
  RatSeries s(order);
  Rational four_m = 1;
  for (int m = 0; 2 * m <= order; ++m) {
    s[2 * m] = Rational(m % 2 ? -1 : 1) / (four_m * factorial(2 * m + 1));
    four_m *= 4;
  }
  return s;
}

/// cosh(z/2) = sum z^{2m} / (4^m (2m)!).
inline RatSeries cosh_half(int order) {
  RatSeries s(order);
  Rational four_m = 1;
  for (int m = 0; 2 * m <= order; ++m) {
    s[2 * m] = Rational(1) / (four_m * factorial(2 * m));
    four_m *= 4;
  }
  return s;
}

/// (z/2)/sinh(z/2).
inline RatSeries ahat_factor(int order) { return sinh_half_ratio(order).inverse(); }

/// log( (z/2)/sinh(z/2) ).
inline RatSeries ahat_log(int order) { return ahat_factor(order).log(); }

/// (z/2) coth(z/2) = cosh(z/2) / (sinh(z/2)/(z/2)).
inline RatSeries coth_half(int order) { return cosh_half(order) * sinh_half_ratio(order).inverse(); }

}  // namespace eqindex
