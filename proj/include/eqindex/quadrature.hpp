#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace eqindex::quad {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

/// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(M_PI * (i + 0.75L) / (n + 0.5L));
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      long double dp = n * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs((double)dx) < 1e-16) break;
    }
    long double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    long double dp = n * (x * p1 - p0) / (x * x - 1);
    r.x[i] = (double)x;
    r.w[i] = (double)(2.0L / ((1 - x * x) * dp * dp));
  }
  return r;
}

/// Deterministic pairwise summation (stable association order).
template <typename T>
inline T pairwise_sum(std::vector<T> v) {
  if (v.empty()) return T{};
  size_t n = v.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i < n / 2; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) v[n / 2] = v[n - 1];
    n = half;
  }
  return v[0];
}

/// C-infinity cutoff ramp: 1 for t <= 0, 0 for t >= 1.
inline double smooth_ramp(double t) {
  if (t <= 0) return 1.0;
  if (t >= 1) return 0.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

}  // namespace eqindex::quad
