#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eqindex/eqforms.hpp"
#include "eqindex/gradealg.hpp"

namespace eqindex::symbols {

/// Flat-chart Dirac data: R^n with the Euclidean metric, a linear isometric
/// action field X^M = C_X y (C antisymmetric, one Lie parameter), a Clifford
/// module Cl(n) (x) Mat(r) with auxiliary matrix connection one-form A, and an
/// auxiliary fiber action generator L(X).
struct ChartDiracData {
  int n = 0, r = 1;
  Space csp;  // chart sections: Clifford fiber, chart vars y
  std::vector<std::vector<Rational>> C;  // action matrix (antisymmetric)
  std::vector<GradedElem> A;             // aux connection coefficients (matrix-valued, Cl-free)
  GradedElem L;                          // aux fiber action, X-linear matrix

  static ChartDiracData make(int n, int r, int J, std::vector<std::vector<Rational>> C) {
    ChartDiracData d;
    d.n = n;
    d.r = r;
    d.csp.chart_dim = n;
    d.csp.vsplit = n;
    d.csp.lie_dim = 1;
    d.csp.J = J;
    d.csp.fiber_dim = n;
    d.csp.mat_dim = r;
    d.csp.alg = Alg::Clifford;
    d.C = std::move(C);
    d.A.assign(n, GradedElem::zero(d.csp));
    d.L = GradedElem::zero(d.csp);
    return d;
  }

  /// theta_j = (X^M)_j = sum_l C[j][l] y^l X  (the one-form dual to X^M).
  GradedElem theta(int j) const {
    GradedElem t(csp);
    for (int l = 0; l < n; ++l)
      if (C[j][l] != 0)
        t += GradedElem::chart_var(csp, l) * GradedElem::lie_var(csp, 0) * C[j][l];
    return t;
  }

  GradedElem cov(int i, const GradedElem& s) const { return s.dchart(i) + A[i] * s; }

  GradedElem dirac(const GradedElem& s) const {
    GradedElem out(csp);
    for (int i = 0; i < n; ++i) out += GradedElem::gen(csp, i) * cov(i, s);
    return out;
  }

  GradedElem c_theta(const GradedElem& s) const {
    GradedElem out(csp);
    for (int j = 0; j < n; ++j) out += theta(j) * (GradedElem::gen(csp, j) * s);
    return out;
  }

  /// c(d theta): (d theta)_{ij} = -2 C_{ij} X on the flat chart.
  GradedElem c_dtheta(const GradedElem& s) const {
    GradedElem out(csp);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (C[i][j] != 0)
          out += GradedElem::gen(csp, i) * GradedElem::gen(csp, j) * GradedElem::lie_var(csp, 0) *
                 s * (Rational(-2) * C[i][j]);
    return out;
  }

  GradedElem nabla_X(const GradedElem& s) const {
    GradedElem out(csp);
    for (int j = 0; j < n; ++j) out += theta(j) * cov(j, s);
    return out;
  }

  /// d* theta = - sum_j d_j theta_j = -tr(C) X.
  GradedElem dstar_theta() const {
    GradedElem out(csp);
    for (int j = 0; j < n; ++j) out -= theta(j).dchart(j);
    return out;
  }

  /// Spinor moment tau(C) = (1/4) sum C_ij e_i e_j X (Kosmann, flat chart).
  GradedElem mu_spin() const {
    GradedElem out(csp);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (C[i][j] != 0)
          out += GradedElem::gen(csp, i) * GradedElem::gen(csp, j) * GradedElem::lie_var(csp, 0) *
                 Rational(C[i][j] / 4);
    return out;
  }

  /// Auxiliary moment mu^{aux} = L(X) - iota(X^M) A.
  GradedElem mu_aux() const {
    GradedElem out = L;
    for (int j = 0; j < n; ++j) out -= theta(j) * A[j];
    return out;
  }

  GradedElem mu_E(const GradedElem& s) const { return (mu_spin() + mu_aux()) * s; }

  /// Twisting curvature of A: F_{ij} = d_i A_j - d_j A_i + [A_i, A_j].
  GradedElem c_F(const GradedElem& s) const {
    GradedElem out(csp);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        GradedElem F = A[j].dchart(i) - A[i].dchart(j) + A[i] * A[j] - A[j] * A[i];
        if (F.is_zero()) continue;
        out += GradedElem::gen(csp, i) * GradedElem::gen(csp, j) * F * s;
      }
    return out;
  }

  /// Bismut Laplacian H_u = D_u^2 + L^E(X), with D_u = D + u c(theta_X) and
  /// L^E(X) = nabla_X + mu^E(X).
  GradedElem H_u(const Rational& u, const GradedElem& s) const {
    GradedElem Du_s = dirac(s) + c_theta(s) * u;
    GradedElem Du2 = dirac(Du_s) + c_theta(Du_s) * u;
    return Du2 + nabla_X(s) + mu_E(s);
  }

  /// Lichnerowicz right-hand side at parameter u (flat chart: kappa_M = 0):
  /// (nabla^{uX})* nabla^{uX} + c(F) + mu^E(X) + u c(d theta) + (1-4u) nabla_X.
  GradedElem lichnerowicz_rhs(const Rational& u, const GradedElem& s) const {
    GradedElem out(csp);
    for (int i = 0; i < n; ++i) {
      auto cov_u = [&](const GradedElem& v) { return cov(i, v) - theta(i) * v * u; };
      out -= cov_u(cov_u(s));
    }
    out += c_F(s) + mu_E(s) + c_dtheta(s) * u + nabla_X(s) * (Rational(1) - Rational(4) * u);
    return out;
  }

  /// u = 1/4 form with the relative moment mu^{E/S} = mu^E + (1/4) c(d theta).
  GradedElem lichnerowicz_quarter_rhs(const GradedElem& s) const {
    GradedElem out(csp);
    Rational u(1, 4);
    for (int i = 0; i < n; ++i) {
      auto cov_u = [&](const GradedElem& v) { return cov(i, v) - theta(i) * v * u; };
      out -= cov_u(cov_u(s));
    }
    out += c_F(s) + mu_E(s) + c_dtheta(s) * Rational(1, 4);
    return out;
  }
};

struct DiracIdentityReport {
  bool commutator_ok = true;
  bool lichnerowicz_ok = true;
  bool quarter_form_ok = true;
  bool theta_moment_ok = true;
  bool divergence_ok = true;
  std::string witness;
  bool ok() const {
    return commutator_ok && lichnerowicz_ok && quarter_form_ok && theta_moment_ok && divergence_ok;
  }
};

/// Exact operator identities on the spanning set of polynomial sections up to
/// y-degree `span_deg`:
///   (i)  D c(theta) + c(theta) D = -2 nabla_X + c(d theta) + d* theta,
///   (ii) H_u = Lichnerowicz RHS at every supplied u (and the u = 1/4 form),
///   (iii) d theta (e_i, e_j) = -2 (mu^M e_i, e_j) with mu^M = -C,
///   (iv) d* theta = tr(mu^M) = 0.
inline DiracIdentityReport chart_dirac_identities(const ChartDiracData& d,
                                                  const std::vector<Rational>& us = {Rational(0),
                                                                                     Rational(1, 4),
                                                                                     Rational(1),
                                                                                     Rational(2, 3)},
                                                  int span_deg = 4) {
  DiracIdentityReport rep;

  // spanning sections: y^beta * blade * E_{ab}; degrees up to span_deg
  std::vector<GradedElem> span;
  std::vector<Mono> monos;
  Mono zero(d.csp.chart_dim + d.csp.lie_dim, 0);
  std::function<void(Mono, int, int)> gen_monos = [&](Mono cur, int pos, int left) {
    if (pos == d.n) {
      monos.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = uint8_t(e);
      gen_monos(cur, pos + 1, left - e);
    }
  };
  gen_monos(zero, 0, span_deg);
  for (const auto& mo : monos)
    for (uint32_t b = 0; b < (uint32_t(1) << d.n); ++b)
      for (int a = 0; a < d.r; ++a)
        span.push_back(GradedElem::term(d.csp, Scalar::one(), b, a, a % d.r, mo));

  for (const auto& s : span) {
    GradedElem lhs = d.dirac(d.c_theta(s)) + d.c_theta(d.dirac(s));
    GradedElem rhs = d.nabla_X(s) * Rational(-2) + d.c_dtheta(s) + d.dstar_theta() * s;
    if (lhs != rhs) {
      rep.commutator_ok = false;
      rep.witness = "commutator identity fails on " + s.str() + " residual " + (lhs - rhs).str();
      break;
    }
  }

  for (const auto& u : us) {
    if (!rep.lichnerowicz_ok) break;
    for (const auto& s : span) {
      GradedElem lhs = d.H_u(u, s);
      GradedElem rhs = d.lichnerowicz_rhs(u, s);
      if (lhs != rhs) {
        rep.lichnerowicz_ok = false;
        rep.witness = "Lichnerowicz identity fails at u = " + std::to_string(to_double(u)) +
                      " residual " + (lhs - rhs).str();
        break;
      }
    }
  }

  for (const auto& s : span) {
    if (d.H_u(Rational(1, 4), s) != d.lichnerowicz_quarter_rhs(s)) {
      rep.quarter_form_ok = false;
      rep.witness = "u = 1/4 relative-moment form fails";
      break;
    }
  }

  // d theta (e_i, e_j) = -2 (mu^M e_i, e_j) with mu^M = -C: both sides -2 C_ij X
  for (int i = 0; i < d.n && rep.theta_moment_ok; ++i)
    for (int j = 0; j < d.n; ++j) {
      GradedElem dth = d.theta(j).dchart(i) - d.theta(i).dchart(j);
      GradedElem want = GradedElem::lie_var(d.csp, 0) * (Rational(-2) * d.C[i][j]);
      if (dth != want) {
        rep.theta_moment_ok = false;
        rep.witness = "theta/moment relation fails at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        break;
      }
    }

  GradedElem div = d.dstar_theta();
  Rational trC = 0;
  for (int i = 0; i < d.n; ++i) trC += d.C[i][i];
  if (!div.is_zero() || trC != 0) rep.divergence_ok = false;

  return rep;
}

/// One-form omega_X = -d alpha_X - (1/4) theta_X from the radial primitive
/// alpha_X(y) = -(1/4) integral_0^1 (iota(R) theta)(t y) t^{-1} dt, computed
/// termwise on monomials.  theta is given by polynomial components vanishing
/// at the origin.
inline std::vector<GradedElem> conjugate_form_omega(const Space& sp,
                                                    const std::vector<GradedElem>& theta) {
  int n = sp.chart_dim;
  for (int j = 0; j < n; ++j) {
    GradedElem at0 = theta[j];
    for (int i = 0; i < n; ++i) at0 = at0.subst_chart(i, 0);
    if (!at0.is_zero())
      throw std::invalid_argument("conjugate_form_omega: theta must vanish at the base point");
  }
  // iota(R) theta = sum_j y^j theta_j; alpha = -(1/4) sum monomials / degree
  GradedElem ir(sp);
  for (int j = 0; j < n; ++j) ir += GradedElem::chart_var(sp, j) * theta[j];
  GradedElem alpha(sp);
  for (const auto& [t, c] : ir.terms()) {
    int deg = 0;
    for (int i = 0; i < n; ++i) deg += t.mono[i];
    alpha.add_term(t.blade, t.row, t.col, t.mono, c * Rational(-1, 4 * deg));
  }
  std::vector<GradedElem> omega;
  for (int j = 0; j < n; ++j) omega.push_back(-alpha.dchart(j) - theta[j] * Rational(1, 4));
  return omega;
}

}  // namespace eqindex::symbols
