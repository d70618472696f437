#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqindex/quadrature.hpp"

namespace eqindex::kirillov {

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Round unit sphere CP^1 = S^2 in two stereographic charts with the circle
/// action z -> e^{i phi} z and the twisting line bundle O(k).  All geometric
/// data is closed form; this module is the (only) numeric boundary.
///
/// Chart conventions: chart 0 has the south pole (h = -1) at the origin,
/// chart 1 the north pole (h = +1); transition w = 1/z.  Conformal factor
/// lambda = 2/(1+rho^2); vol = lambda^2 da db; h = +/- (rho^2-1)/(rho^2+1).
struct GeometryModel {
  int k = 0;  // twist degree of O(k)

  static double lambda2(double rho2) {
    double t = 1.0 + rho2;
    return 4.0 / (t * t);
  }
  static double height(int chart, double rho2) {
    double h = (rho2 - 1.0) / (rho2 + 1.0);
    return chart == 0 ? h : -h;
  }

  /// theta_X components (per unit s) at chart point (a,b): dual of the
  /// rotation field V = (-b, a) w.r.t. the round metric.
  static void theta(int chart, double a, double b, double& ta, double& tb) {
    double sgn = chart == 0 ? 1.0 : -1.0;  // the action reverses in the w chart
    double l2 = lambda2(a * a + b * b);
    ta = -sgn * l2 * b;
    tb = sgn * l2 * a;
  }

  /// d theta coefficient (da^db slot, per unit s), analytic closed form.
  static double dtheta_coeff(int chart, double a, double b) {
    double rho2 = a * a + b * b;
    double sgn = chart == 0 ? 1.0 : -1.0;
    return -2.0 * sgn * lambda2(rho2) * height(0, rho2);  // = -2 lambda^2 h_chart0 * sgn
  }

  /// Riemannian moment slot m_R(s, point): the (1,2) entry of mu^M(s X_0) in
  /// the orthonormal frame; pinned by d theta = -2 (mu^M .,.) and by
  /// equivariant closedness against R_12 = -vol.
  static double moment_riemann(int chart, double s, double rho2) {
    return -s * height(chart, rho2);
  }

  /// Gauss curvature two-form slot per orthonormal coframe unit (R_12 / vol).
  static double curvature_coeff() { return -1.0; }

  /// Line bundle O(d): curvature F = -i (d/2) vol, moment mu = -i s (d/2) h;
  /// integrates to Chern number d.
  static Complex line_curvature_per_vol(int d) { return -kI * (0.5 * d); }
  static Complex line_moment(int d, double s, double h) { return -kI * (0.5 * d * s * h); }
};

/// (m/2)/sin(m/2) and its derivative, series-stabilized near zero.
inline double ahat_f(double m) {
  if (std::fabs(m) < 1e-4) {
    double m2 = m * m;
    return 1.0 + m2 / 24.0 + 7.0 * m2 * m2 / 5760.0;
  }
  return (m / 2.0) / std::sin(m / 2.0);
}
inline double ahat_fp(double m) {
  if (std::fabs(m) < 1e-4) {
    double m2 = m * m;
    return m / 12.0 + 7.0 * m2 * m / 1440.0;
  }
  double s = std::sin(m / 2.0), c = std::cos(m / 2.0);
  return 0.5 * (s - (m / 2.0) * c) / (s * s);
}

struct QuadratureConfig {
  int gl_order = 24;        // Gauss-Legendre order per radial panel
  int radial_panels = 10;   // subdivision count in rho
  int phi_points = 24;      // periodic rule in the angle
  double h_lo = -0.25;      // partition-of-unity ramp window in height
  double h_hi = 0.25;
  double tolerance = 1e-9;  // convergence tolerance for the Richardson flag

  void validate() const {
    if (tolerance <= 0) throw std::invalid_argument("QuadratureConfig: tolerance must be positive");
    if (gl_order < 2 || radial_panels < 1 || phi_points < 4)
      throw std::invalid_argument("QuadratureConfig: rule orders too small");
    if (!(h_lo < h_hi) || h_lo <= -1.0 || h_hi >= 1.0)
      throw std::invalid_argument("QuadratureConfig: partition window invalid");
  }
};

/// Top-degree coefficient (per da db) of the equivariant integrand
/// (2 pi i)^{-1} [Ahat_g(s X_0) Ch_g(s X_0, E/S)]_top at a chart point, with
/// the Dolbeault-as-Dirac twist W = O(k) (x) O(1), so deg W = k + 1.
inline Complex equivariant_integrand(const GeometryModel& geo, double s, int chart, double a,
                                     double b) {
  double rho2 = a * a + b * b;
  double h = GeometryModel::height(chart, rho2);
  double l2 = GeometryModel::lambda2(rho2);
  int d = geo.k + 1;  // spin-c shift bookkeeping: O(k) (x) O(1)

  // n = 2 truncation of Ahat: f(w) = f(m) + f'(m) * Omega with w = Omega + m
  double m = GeometryModel::moment_riemann(chart, s, rho2);
  double f0 = ahat_f(m);
  double f1 = ahat_fp(m);
  double omega = GeometryModel::curvature_coeff();  // vol units

  // Ch = exp(-mu_W) (1 - F_W): scalar part and vol part
  Complex muW = GeometryModel::line_moment(d, s, h);
  Complex FW = GeometryModel::line_curvature_per_vol(d);
  Complex ch0 = std::exp(-muW);
  Complex chtop = -FW * ch0;

  // [Ahat Ch]_top per vol unit, then to da db density via lambda^2
  Complex top = f0 * chtop + f1 * omega * ch0;
  Complex norm = 1.0 / (2.0 * kPi * kI);
  return norm * top * l2;
}

/// Two-chart partition-of-unity quadrature of a per-chart density; the
/// density callback receives (chart, a, b) and returns the integrand WITHOUT
/// the partition weight.
template <typename F>
inline Complex integrate_sphere(const QuadratureConfig& cfg, F&& density) {
  cfg.validate();
  auto gl = quad::gauss_legendre(cfg.gl_order);
  std::vector<Complex> parts;

  for (int chart = 0; chart < 2; ++chart) {
    // chart 0 integrates where h <= h_hi; chart 1 where h >= h_lo
    double hcut = chart == 0 ? cfg.h_hi : -cfg.h_lo;
    double rho_max = std::sqrt((1.0 + hcut) / (1.0 - hcut));
    double panel = rho_max / cfg.radial_panels;
    for (int p = 0; p < cfg.radial_panels; ++p) {
      double r0 = p * panel, r1 = (p + 1) * panel;
      for (int i = 0; i < cfg.gl_order; ++i) {
        double rho = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * gl.x[i];
        double wr = 0.5 * (r1 - r0) * gl.w[i];
        for (int j = 0; j < cfg.phi_points; ++j) {
          double phi = 2.0 * kPi * (j + 0.5) / cfg.phi_points;
          double wphi = 2.0 * kPi / cfg.phi_points;
          double a = rho * std::cos(phi), b = rho * std::sin(phi);
          double h0 = GeometryModel::height(chart, rho * rho);
          // partition weight in height, smooth ramp on [h_lo, h_hi]
          double t = (h0 - cfg.h_lo) / (cfg.h_hi - cfg.h_lo);
          double w_pou = chart == 0 ? quad::smooth_ramp(t) : 1.0 - quad::smooth_ramp(t);
          if (w_pou == 0.0) continue;
          parts.push_back(density(chart, a, b) * (w_pou * wr * wphi * rho));
        }
      }
    }
  }
  return quad::pairwise_sum(std::move(parts));
}

struct IntegralResult {
  Complex value{};
  double convergence = 0.0;  // |value - refined value|
  bool converged = true;
};

/// Equivariant integral with a Richardson-style comparison of two rule orders.
inline IntegralResult integrate(const GeometryModel& geo, double s, const QuadratureConfig& cfg) {
  auto density = [&](int chart, double a, double b) {
    return equivariant_integrand(geo, s, chart, a, b);
  };
  Complex v1 = integrate_sphere(cfg, density);
  QuadratureConfig fine = cfg;
  fine.gl_order += 6;
  fine.radial_panels += 2;
  Complex v2 = integrate_sphere(fine, density);
  IntegralResult r;
  r.value = v2;
  r.convergence = std::abs(v2 - v1);
  r.converged = r.convergence < cfg.tolerance;
  return r;
}

/// Representation-theoretic index oracle: the character of e^{-s X_0} on
/// ker D+ (-) ker D- for the Dolbeault complex of O(k), computed by weight
/// counting on H^0(CP^1, O(k)) (H^1 = 0 for k >= 0): the symmetric ladder
/// w_0 + j = j - k/2, j = 0..k.  Independent of all differential geometry.
inline Complex index_oracle(int k, double s) {
  if (k < 0) throw std::invalid_argument("index_oracle: k < 0 unsupported (H^1 would contribute)");
  std::vector<Complex> ph;
  for (int j = 0; j <= k; ++j) ph.push_back(std::exp(-kI * (s * (j - 0.5 * k))));
  return quad::pairwise_sum(std::move(ph));
}

/// Analytic s-derivative of the oracle at s (for smoothness checks).
inline Complex index_oracle_ds(int k, double s) {
  std::vector<Complex> ph;
  for (int j = 0; j <= k; ++j)
    ph.push_back(-kI * (j - 0.5 * k) * std::exp(-kI * (s * (j - 0.5 * k))));
  return quad::pairwise_sum(std::move(ph));
}

struct KirillovReport {
  double lhs = 0, rhs = 0, absdiff = 0;
  Complex lhs_c{}, rhs_c{};
  bool pass = false;
  bool converged = true;
};

/// Kirillov formula check: | integral - character | < tolerance.
inline KirillovReport kirillov_check(int k, double s, const QuadratureConfig& cfg,
                                     double tolerance) {
  GeometryModel geo{k};
  auto integral = integrate(geo, s, cfg);
  Complex rhs = index_oracle(k, s);
  KirillovReport rep;
  rep.lhs_c = integral.value;
  rep.rhs_c = rhs;
  rep.lhs = integral.value.real();
  rep.rhs = rhs.real();
  rep.absdiff = std::abs(integral.value - rhs);
  rep.converged = integral.converged;
  rep.pass = rep.absdiff < tolerance && rep.converged;
  return rep;
}

/// CSV sweep of s in [0, 1]: s, lhs, rhs, |difference| per row.
inline std::string s_sweep_csv(int k, const QuadratureConfig& cfg, double smax = 1.0,
                               double step = 0.05) {
  std::ostringstream os;
  os << "s,integral_re,integral_im,character,absdiff\n";
  os.precision(15);
  for (double s = 0.0; s <= smax + 1e-12; s += step) {
    GeometryModel geo{k};
    auto v = integrate(geo, s, cfg);
    Complex rhs = index_oracle(k, s);
    os << s << "," << v.value.real() << "," << v.value.imag() << "," << rhs.real() << ","
       << std::abs(v.value - rhs) << "\n";
  }
  return os.str();
}

}  // namespace eqindex::kirillov
