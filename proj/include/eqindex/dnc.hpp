#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "eqindex/graded.hpp"

namespace eqindex::dnc {

/// Coordinate ring A(V, M) of the deformation to the normal cone for the
/// linear model V = R^{l+k}, M = R^l x {0}: Laurent polynomials sum f_p t^{-p}
/// whose coefficient f_p vanishes to order p along {y = 0} for p > 0.
/// Coefficients are polynomial functions (blade-free GradedElems).
struct LaurentFn {
  Space sp;
  std::map<int, GradedElem> terms;  // p -> f_p

  explicit LaurentFn(const Space& s) : sp(s) {}

  void add(int p, const GradedElem& f) {
    if (f.is_zero()) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  friend LaurentFn operator*(const LaurentFn& a, const LaurentFn& b) {
    LaurentFn r(a.sp);
    for (const auto& [p, f] : a.terms)
      for (const auto& [q, g] : b.terms) r.add(p + q, f * g);
    return r;
  }
  friend LaurentFn operator+(const LaurentFn& a, const LaurentFn& b) {
    LaurentFn r = a;
    for (const auto& [q, g] : b.terms) r.add(q, g);
    return r;
  }
};

inline Space chart_space(int l, int k, int lie_dim = 0, int J = 0) {
  Space sp;
  sp.chart_dim = l + k;
  sp.vsplit = l;
  sp.lie_dim = lie_dim;
  sp.J = J;
  return sp;
}

/// Membership in A(V, M): every monomial of f_p has y-degree >= p (p > 0).
inline bool membership(const LaurentFn& f) {
  for (const auto& [p, fp] : f.terms) {
    if (p <= 0) continue;
    for (const auto& [k, v] : fp.terms())
      if (fp.vertical_degree_of(k.mono) < p) return false;
  }
  return true;
}

inline Scalar eval_poly(const GradedElem& f, const std::vector<Rational>& pt) {
  GradedElem g = f;
  for (int i = 0; i < f.space().chart_dim; ++i) g = g.subst_chart(i, pt.at(i));
  if (g.is_zero()) return Scalar::zero();
  return g.scalar_value();
}

/// Generic-fiber character: sum_p f_p(v) lambda^{-p}, lambda != 0.
inline Scalar eval_generic(const LaurentFn& f, const std::vector<Rational>& v,
                           const Rational& lambda) {
  if (lambda == 0) throw std::invalid_argument("eval_generic: lambda must be nonzero (use eval_zero)");
  Scalar s = Scalar::zero();
  for (const auto& [p, fp] : f.terms) {
    Rational lp = 1;
    for (int t = 0; t < (p >= 0 ? p : -p); ++t) lp *= lambda;
    Rational factor = p >= 0 ? Rational(1) / lp : lp;
    s += eval_poly(fp, v) * factor;
  }
  return s;
}

/// Derivation t*X for the constant vertical field X = sum Xm_j d/dy_j:
/// f_p t^{-p} |-> (X.f_p) t^{-(p-1)}.
inline LaurentFn apply_tX(const LaurentFn& f, const std::vector<Rational>& Xm) {
  LaurentFn r(f.sp);
  int l = f.sp.vsplit;
  for (const auto& [p, fp] : f.terms) {
    GradedElem d(f.sp);
    for (size_t j = 0; j < Xm.size(); ++j)
      if (Xm[j] != 0) d += fp.dchart(l + int(j)) * Xm[j];
    r.add(p - 1, d);
  }
  return r;
}

/// Zero-fiber character at the normal vector X_m over base point m, computed
/// from the closed formula sum_{p>=0} (1/p!) X^p f_p (m).
inline Scalar eval_zero(const LaurentFn& f, const std::vector<Rational>& m,
                        const std::vector<Rational>& Xm) {
  int l = f.sp.vsplit, k = f.sp.chart_dim - l;
  if (int(m.size()) != l || int(Xm.size()) != k)
    throw std::invalid_argument("eval_zero: point/vector shape mismatch");
  std::vector<Rational> pt(f.sp.chart_dim, 0);
  for (int i = 0; i < l; ++i) pt[i] = m[i];

  Scalar s = Scalar::zero();
  for (const auto& [p, fp] : f.terms) {
    if (p < 0) continue;
    GradedElem g = fp;
    Rational fact = 1;
    for (int t = 1; t <= p; ++t) {
      GradedElem d(f.sp);
      for (int j = 0; j < k; ++j)
        if (Xm[j] != 0) d += g.dchart(l + j) * Xm[j];
      g = d;
      fact *= t;
    }
    s += eval_poly(g, pt) * (Rational(1) / fact);
  }
  return s;
}

/// Independent route: eps_m o exp(tX), with exp the finite sum of (tX)^k/k!
/// and eps_m the evaluation of the t^0 coefficient at (m, 0).
inline Scalar eval_zero_via_exp(const LaurentFn& f, const std::vector<Rational>& m,
                                const std::vector<Rational>& Xm, int cap = 64) {
  LaurentFn acc = f;     // running (tX)^k f / k!
  LaurentFn total = f;   // exp(tX) f
  Rational fact = 1;
  for (int kk = 1; kk <= cap; ++kk) {
    acc = apply_tX(acc, Xm);
    if (acc.terms.empty()) break;
    fact *= kk;
    LaurentFn scaled(f.sp);
    for (const auto& [p, fp] : acc.terms) scaled.add(p, fp * (Rational(1) / fact));
    // undo the running factorial on acc for the next step: keep acc unscaled
    total = total + scaled;
    // note: acc holds (tX)^k f unscaled; `scaled` adds (tX)^k f / k!
  }
  auto it = total.terms.find(0);
  if (it == total.terms.end()) return Scalar::zero();
  std::vector<Rational> pt(f.sp.chart_dim, 0);
  for (int i = 0; i < f.sp.vsplit; ++i) pt[i] = m[i];
  return eval_poly(it->second, pt);
}

/// Euler-like test: R f = p f + O(p+1) for f vanishing to order p.
inline bool euler_like_check(const std::vector<GradedElem>& R, const GradedElem& f, int p) {
  if (!f.is_zero() && f.min_vertical_degree() < p)
    throw std::invalid_argument("euler_like_check: f does not vanish to order p");
  GradedElem Rf(f.space());
  for (int c = 0; c < f.space().chart_dim; ++c) Rf += R.at(c) * f.dchart(c);
  GradedElem rem = Rf - f * Rational(p);
  return rem.is_zero() || rem.min_vertical_degree() >= p + 1;
}

}  // namespace eqindex::dnc
