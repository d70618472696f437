#pragma once

#include <vector>

#include "eqindex/eqforms.hpp"
#include "eqindex/series.hpp"

namespace eqindex {

/// Square matrix over GradedElem with ring-element entries (used for
/// so(n)-valued curvature matrices whose slots are separate from the value
/// matrix factor of the entries).
struct ElemMat {
  std::vector<std::vector<GradedElem>> a;

  int size() const { return int(a.size()); }
  static ElemMat zero(int n, const Space& sp) {
    ElemMat m;
    m.a.assign(n, std::vector<GradedElem>(n, GradedElem::zero(sp)));
    return m;
  }
  GradedElem& operator()(int i, int j) { return a[i][j]; }
  const GradedElem& operator()(int i, int j) const { return a[i][j]; }

  bool is_zero() const {
    for (const auto& row : a)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
  bool antisymmetric() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (a[i][j] != -a[j][i]) return false;
    return true;
  }

  friend ElemMat operator*(const ElemMat& x, const ElemMat& y) {
    int n = x.size();
    ElemMat r = zero(n, x.a[0][0].space());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (x.a[i][k].is_zero()) continue;
        for (int j = 0; j < n; ++j) r.a[i][j] += x.a[i][k] * y.a[k][j];
      }
    return r;
  }
  friend ElemMat operator+(const ElemMat& x, const ElemMat& y) {
    int n = x.size();
    ElemMat r = zero(n, x.a[0][0].space());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.a[i][j] = x.a[i][j] + y.a[i][j];
    return r;
  }
  GradedElem trace() const {
    GradedElem t = GradedElem::zero(a[0][0].space());
    for (int i = 0; i < size(); ++i) t += a[i][i];
    return t;
  }
};

namespace eqforms {

/// Equivariant A-hat form det^{1/2}( (R/2) / sinh(R/2) ) of an antisymmetric
/// matrix of nilpotent forms, computed as exp( 1/2 tr log(...) ).  All series
/// terminate by nilpotency; the truncation order follows the ambient space.
inline EqForm ahat(const ElemMat& Rg, int series_order = 0) {
  const Space& sp = Rg.a[0][0].space();
  if (!Rg.antisymmetric()) throw std::invalid_argument("ahat: matrix must be antisymmetric");
  for (const auto& row : Rg.a)
    for (const auto& e : row)
      for (const auto& [k, v] : e.terms())
        if (blade_deg(k.blade) + 2 * e.lie_degree_of(k.mono) < 1)
          throw std::invalid_argument("ahat: entries must have positive equivariant degree");

  int cap = series_order > 0 ? series_order : sp.fiber_dim + 2 * sp.J + 2;
  RatSeries p = ahat_log(cap);

  // L = sum_k p_{2k} tr(Rg^{2k}); odd traces vanish for antisymmetric Rg.
  GradedElem L = GradedElem::zero(sp);
  ElemMat sq = Rg * Rg;
  ElemMat pw = sq;
  for (int k = 2; k <= cap; k += 2) {
    L += pw.trace() * Scalar::from_rational(p[k]);
    if (k + 2 > cap) {
      if (!(pw * sq).is_zero()) throw std::invalid_argument("ahat: entries not nilpotent");
      break;
    }
    pw = pw * sq;
    if (pw.is_zero()) break;
  }
  return exp_nilpotent(L * Scalar::from_rational(Rational(1, 2)));
}

/// Graded trace over the matrix (twisting) factor; `signs` carries the
/// Z/2-grading of the twisting frame, defaulting to ungraded (+1).
inline EqForm str_twist(const GradedElem& a, const std::vector<int>& signs = {}) {
  Space sp = a.space();
  sp.mat_dim = 1;
  EqForm r(sp);
  for (const auto& [k, v] : a.terms()) {
    if (k.row != k.col) continue;
    int s = signs.empty() ? 1 : signs.at(k.row);
    r.add_term(k.blade, 0, 0, k.mono, s < 0 ? -v : v);
  }
  return r;
}

/// Equivariant relative Chern character Str(exp(-F_g)) for a matrix-valued
/// equivariant curvature with nilpotent entries.
inline EqForm ch_rel(const EqForm& Fg, const std::vector<int>& signs = {}) {
  for (const auto& [k, v] : Fg.terms())
    if (blade_deg(k.blade) + 2 * Fg.lie_degree_of(k.mono) < 1)
      throw std::invalid_argument("ch_rel: entries must have positive equivariant degree");
  return str_twist(exp_nilpotent(-Fg), signs);
}

}  // namespace eqforms
}  // namespace eqindex
