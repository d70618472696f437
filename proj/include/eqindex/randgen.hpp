#pragma once

#include <random>

#include "eqindex/symbol_ops.hpp"

namespace eqindex::randgen {

using Rng = std::mt19937_64;

inline int rint(Rng& rng, int lo, int hi) { return lo + int(rng() % uint64_t(hi - lo + 1)); }

inline Rational rrat(Rng& rng, int lo = -3, int hi = 3, int dmax = 2) {
  int num = rint(rng, lo, hi);
  int den = rint(rng, 1, dmax);
  return Rational(num, den);
}

/// Random blade-free polynomial (times Id when matrix valued).
inline GradedElem rpoly(Rng& rng, const Space& sp, int deg_max, int nterms, int lie_max = 0) {
  GradedElem f(sp);
  for (int t = 0; t < nterms; ++t) {
    Mono m(sp.chart_dim + sp.lie_dim, 0);
    int budget = rint(rng, 0, deg_max);
    for (int d = 0; d < budget; ++d) {
      int i = rint(rng, 0, sp.chart_dim - 1);
      ++m[i];
    }
    for (int a = 0; a < sp.lie_dim && lie_max > 0; ++a) m[sp.chart_dim + a] = uint8_t(rint(rng, 0, lie_max));
    f += GradedElem::central(sp, Scalar::from_rational(rrat(rng)), 0, m);
  }
  return f;
}

/// Random abstract filtered model with l, k chart split and frame degrees.
inline rescale::FilteredModel rmodel(Rng& rng, int lmax = 2, int kmax = 2, int rmax = 3,
                                     int qmax = 2, int trunc = 8) {
  int l = rint(rng, 0, lmax);
  int k = rint(rng, 1, kmax);
  int r = rint(rng, 1, rmax);
  std::vector<int> q(r);
  for (auto& v : q) v = rint(rng, 0, qmax);
  return rescale::FilteredModel::abstract_model(l, k, q, trunc);
}

/// Random connection on an abstract model satisfying the three compatibility
/// conditions: entries allowed only where the frame degree does not increase.
inline rescale::ConnectionData rconnection(Rng& rng, const rescale::FilteredModel& m,
                                           int deg_max = 2, int nterms = 2) {
  rescale::ConnectionData c = rescale::ConnectionData::flat(m);
  int r = int(m.q.size());
  for (int dir = 0; dir < m.l + m.k; ++dir) {
    GradedElem a(m.ssp);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (m.q[i] > m.q[j]) continue;
        if (rng() % 3 != 0) continue;
        a += GradedElem::matrix_unit(m.ssp, i, j) * rpoly(rng, m.ssp, deg_max, nterms);
      }
    c.A[dir] = a;
  }
  return c;
}

/// Random section of an abstract model (column vector of polynomials).
inline GradedElem rsection(Rng& rng, const rescale::FilteredModel& m, int ydeg_max = 4,
                           int nterms = 4) {
  GradedElem s(m.ssp);
  int r = int(m.q.size());
  for (int t = 0; t < nterms; ++t) {
    Mono mo(m.ssp.chart_dim + m.ssp.lie_dim, 0);
    int budget = rint(rng, 0, ydeg_max);
    for (int d = 0; d < budget; ++d) ++mo[rint(rng, 0, m.ssp.chart_dim - 1)];
    s.add_term(0, rint(rng, 0, r - 1), 0, mo, Scalar::from_rational(rrat(rng)));
  }
  return s;
}

/// Random section of a fiber (Clifford/exterior) model.
inline GradedElem rsection_fiber(Rng& rng, const rescale::FilteredModel& m, int ydeg_max = 3,
                                 int nterms = 4, int lie_max = 1) {
  GradedElem s(m.ssp);
  for (int t = 0; t < nterms; ++t) {
    Mono mo(m.ssp.chart_dim + m.ssp.lie_dim, 0);
    int budget = rint(rng, 0, ydeg_max);
    for (int d = 0; d < budget; ++d) ++mo[rint(rng, 0, m.ssp.chart_dim - 1)];
    for (int a = 0; a < m.ssp.lie_dim && lie_max > 0; ++a)
      mo[m.ssp.chart_dim + a] = uint8_t(rint(rng, 0, lie_max));
    uint32_t blade = uint32_t(rng() % (uint64_t(1) << m.ssp.fiber_dim));
    s.add_term(blade, rint(rng, 0, m.ssp.mat_dim - 1), rint(rng, 0, m.ssp.mat_dim - 1), mo,
               Scalar::from_rational(rrat(rng)));
  }
  return s;
}

/// Random differential operator on an abstract model.
inline rescale::DiffOp rdiffop(Rng& rng, const rescale::FilteredModel& m, int max_words = 2,
                               int max_len = 2) {
  std::vector<rescale::DiffOpTerm> terms;
  int r = int(m.q.size());
  int nt = rint(rng, 1, max_words);
  for (int t = 0; t < nt; ++t) {
    GradedElem phi(m.ssp);
    int i = rint(rng, 0, r - 1), j = rint(rng, 0, r - 1);
    phi += GradedElem::matrix_unit(m.ssp, i, j) * rpoly(rng, m.ssp, 1, 2);
    if (phi.is_zero()) phi = GradedElem::one(m.ssp);
    std::vector<int> word;
    int len = rint(rng, 0, max_len);
    for (int d = 0; d < len; ++d) word.push_back(rint(rng, 0, m.l + m.k - 1));
    terms.push_back({phi, word});
  }
  return rescale::make_diffop(m, terms);
}

/// Random curvature model: antisymmetric Lambda^2-valued R, matrix-valued
/// twisting two-form, optional X-linear moments.
inline symbols::CurvatureModel rcurvature(Rng& rng, int n, int r, int d, int J,
                                          bool with_moments) {
  symbols::CurvatureModel K = symbols::zero_curvature(n, r, d, J);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GradedElem rij(K.ssp);
      for (int t = 0; t < 2; ++t) {
        int a = rint(rng, 0, n - 1), b = rint(rng, 0, n - 1);
        if (a == b) continue;
        uint32_t mask = (uint32_t(1) << a) | (uint32_t(1) << b);
        rij += GradedElem::blade(K.ssp, mask) * rrat(rng);
      }
      K.R[i][j] = rij;
      K.R[j][i] = -rij;
      GradedElem fij(K.ssp);
      fij += GradedElem::matrix_unit(K.ssp, rint(rng, 0, r - 1), rint(rng, 0, r - 1)) * rrat(rng);
      K.F2[i][j] = fij;
      K.F2[j][i] = -fij;
      if (with_moments) {
        GradedElem mij = GradedElem::lie_var(K.ssp, rint(rng, 0, d - 1)) * rrat(rng);
        K.muM[i][j] = mij;
        K.muM[j][i] = -mij;
      }
    }
  if (with_moments)
    K.muES = GradedElem::matrix_unit(K.ssp, rint(rng, 0, r - 1), rint(rng, 0, r - 1)) *
             GradedElem::lie_var(K.ssp, 0) * rrat(rng);
  return K;
}

}  // namespace eqindex::randgen
