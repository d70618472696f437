#pragma once

#include <stdexcept>
#include <vector>

#include "eqindex/graded.hpp"

namespace eqindex {

/// Interior product with the fiber generator e_j, extended as a derivation-free
/// term map (each basis blade loses e_j with the usual sign).
inline GradedElem interior_gen(const GradedElem& a, int j) {
  GradedElem r(a.space());
  for (const auto& [k, v] : a.terms()) {
    BladeProd bp = interior_blade(j, k.blade);
    if (bp.sign == 0) continue;
    r.add_term(bp.mask, k.row, k.col, k.mono, bp.sign < 0 ? -v : v);
  }
  return r;
}

namespace eqforms {

/// Cartan model on a polynomial chart R^n: differential forms (dx blades) with
/// coefficients polynomial in chart coordinates and Lie parameters X, the
/// latter truncated at degree J.  PolyFn is the form-degree-0 subspace.
using EqForm = GradedElem;
using PolyFn = GradedElem;

inline Space form_space(int chart_dim, int lie_dim, int J, int mat_dim = 1) {
  Space sp;
  sp.chart_dim = chart_dim;
  sp.vsplit = chart_dim;
  sp.lie_dim = lie_dim;
  sp.J = J;
  sp.fiber_dim = chart_dim;  // dx^i blades
  sp.mat_dim = mat_dim;
  sp.alg = Alg::Exterior;
  return sp;
}

inline EqForm dx(const Space& sp, int i) { return EqForm::gen(sp, i); }
inline PolyFn x(const Space& sp, int i) { return EqForm::chart_var(sp, i); }
inline PolyFn X(const Space& sp, int a) { return EqForm::lie_var(sp, a); }

/// Polynomial vector field: components of sum_i v^i d/dx^i.  An action field
/// X^M must be linear in the Lie parameters.
struct VectorFieldPoly {
  std::vector<PolyFn> comp;

  bool linear_in_lie() const {
    for (const auto& c : comp)
      for (const auto& [k, v] : c.terms())
        if (c.lie_degree_of(k.mono) != 1) return false;
    return true;
  }
};

inline void check_chart(const GradedElem& a, const GradedElem& b) {
  if (a.space().chart_dim != b.space().chart_dim || a.space().lie_dim != b.space().lie_dim ||
      a.space().J != b.space().J)
    throw std::invalid_argument("eqforms: chart mismatch");
}

/// Exterior differential d.
inline EqForm d(const EqForm& a) {
  EqForm r(a.space());
  for (int c = 0; c < a.space().chart_dim; ++c) r += dx(a.space(), c) * a.dchart(c);
  return r;
}

/// Contraction iota(v).
inline EqForm iota(const VectorFieldPoly& v, const EqForm& a) {
  if (int(v.comp.size()) != a.space().chart_dim)
    throw std::invalid_argument("eqforms: chart mismatch");
  EqForm r(a.space());
  for (int c = 0; c < a.space().chart_dim; ++c) {
    check_chart(v.comp[c], a);
    r += v.comp[c] * interior_gen(a, c);
  }
  return r;
}

/// Lie derivative via the Cartan identity L = d iota + iota d.
inline EqForm lie(const VectorFieldPoly& v, const EqForm& a) {
  return d(iota(v, a)) + iota(v, d(a));
}

/// Equivariant differential (d_g alpha)(X) = d(alpha(X)) - iota(X^M) alpha(X).
inline EqForm d_g(const EqForm& a, const VectorFieldPoly& action) {
  if (!action.linear_in_lie())
    throw std::invalid_argument("d_g: action field must be linear in the Lie parameters");
  return d(a) - iota(action, a);
}

/// Moment of a connection: mu(X) = L^E(X) - iota(X^M) A, where A is the
/// connection one-form and L^E(X) the fiber part of the Lie derivative
/// (linear in X).  Returns an equivariant-degree-2 endomorphism form.
inline EqForm moment(const EqForm& connection_form, const VectorFieldPoly& action,
                     const EqForm& action_on_fiber) {
  if (!action.linear_in_lie())
    throw std::invalid_argument("moment: action field must be linear in the Lie parameters");
  if (connection_form.space().mat_dim != action_on_fiber.space().mat_dim)
    throw std::invalid_argument("moment: shape mismatch");
  return action_on_fiber - iota(action, connection_form);
}

/// Equivariant degree of a homogeneous element; throws when mixed.
inline int eq_degree(const EqForm& a) {
  if (a.is_zero()) return -1;
  int deg = -1;
  for (const auto& [k, v] : a.terms()) {
    int d0 = blade_deg(k.blade) + 2 * a.lie_degree_of(k.mono);
    if (deg == -1) deg = d0;
    if (d0 != deg) throw std::domain_error("eq_degree: inhomogeneous element");
  }
  return deg;
}

}  // namespace eqforms
}  // namespace eqindex
