#pragma once

#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "eqindex/rational.hpp"

namespace eqindex {

/// Exact coefficient ring: finite sums  q * i^b * (2*pi)^m  with q rational,
/// b in {0,1} and m an integer.  Powers of i are canonicalized via i^2 = -1,
/// so the stored form is unique (no zero coefficients, sign carried by q).
/// All ring operations are exact; numeric evaluation happens only at the
/// explicit to_complex() boundary.
class Scalar {
 public:
  // key = (twopi_pow, i_bit)
  using Key = std::pair<int, int>;

  Scalar() = default;
  Scalar(long long n) { *this = from_rational(Rational(n)); }

  static Scalar from_rational(const Rational& q) {
    Scalar s;
    if (q != 0) s.parts_[{0, 0}] = q;
    return s;
  }
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return from_rational(1); }

  /// q * i^k * (2pi)^m, any integer k.
  static Scalar monomial(const Rational& q, int i_pow, int twopi_pow) {
    Scalar s;
    if (q == 0) return s;
    int k = ((i_pow % 4) + 4) % 4;
    Rational c = q;
    if (k >= 2) {
      c = -c;
      k -= 2;
    }
    s.parts_[{twopi_pow, k}] = c;
    return s;
  }
  static Scalar i_unit(int k = 1) { return monomial(1, k, 0); }
  static Scalar two_pi(int m = 1) { return monomial(1, 0, m); }

  bool is_zero() const { return parts_.empty(); }
  bool is_rational() const {
    if (parts_.empty()) return true;
    return parts_.size() == 1 && parts_.begin()->first == Key{0, 0};
  }
  /// Rational value; requires is_rational().
  Rational rational_value() const {
    if (parts_.empty()) return 0;
    if (!is_rational()) throw std::domain_error("Scalar: not a plain rational");
    return parts_.begin()->second;
  }

  Scalar operator-() const {
    Scalar s(*this);
    for (auto& [k, v] : s.parts_) v = -v;
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    for (const auto& [k, v] : o.parts_) {
      auto it = parts_.find(k);
      if (it == parts_.end()) {
        parts_.emplace(k, v);
      } else {
        it->second += v;
        if (it->second == 0) parts_.erase(it);
      }
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += (-o); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (const auto& [ka, va] : a.parts_)
      for (const auto& [kb, vb] : b.parts_) {
        int m = ka.first + kb.first;
        int ib = ka.second + kb.second;
        Rational c = va * vb;
        if (ib >= 2) {
          c = -c;
          ib -= 2;
        }
        Key k{m, ib};
        auto it = r.parts_.find(k);
        if (it == r.parts_.end()) {
          if (c != 0) r.parts_.emplace(k, c);
        } else {
          it->second += c;
          if (it->second == 0) r.parts_.erase(it);
        }
      }
    return r;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend Scalar operator*(const Scalar& a, const Rational& q) { return a * from_rational(q); }
  friend Scalar operator*(const Rational& q, const Scalar& a) { return a * from_rational(q); }

  /// Multiplicative inverse; defined for single-term values only.
  Scalar inverse() const {
    if (parts_.size() != 1) throw std::domain_error("Scalar: inverse of non-monomial");
    auto [k, q] = *parts_.begin();
    // (q i^b (2pi)^m)^-1 = q^-1 i^-b (2pi)^-m, and i^-1 = -i.
    if (k.second == 0) return monomial(Rational(1) / q, 0, -k.first);
    return monomial(-Rational(1) / q, 1, -k.first);
  }

  bool operator==(const Scalar& o) const { return parts_ == o.parts_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::complex<double> z(0.0, 0.0);
    for (const auto& [k, v] : parts_) {
      double mag = to_double(v) * std::pow(kTwoPi, k.first);
      if (k.second == 0)
        z += std::complex<double>(mag, 0.0);
      else
        z += std::complex<double>(0.0, mag);
    }
    return z;
  }

  std::string str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : parts_) {
      if (!first) os << " + ";
      first = false;
      os << v;
      if (k.second == 1) os << "*i";
      if (k.first != 0) os << "*(2pi)^" << k.first;
    }
    return os.str();
  }

  const std::map<Key, Rational>& parts() const { return parts_; }

 private:
  std::map<Key, Rational> parts_;
};

}  // namespace eqindex
