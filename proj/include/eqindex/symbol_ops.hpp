#pragma once

#include <vector>

#include "eqindex/laurent_section.hpp"

namespace eqindex::symbols {

/// Constant curvature data at a point, in the index convention R_ij = (R e_i, e_j):
///  - R[i][j]:  Lambda^2-valued entries of the Riemannian part (these are the
///              coefficients appearing in the harmonic oscillator);
///  - muM[i][j]: X-linear scalars, the Riemannian moment;
///  - F2[i][j]: matrix-valued two-form slots of the twisting curvature;
///  - muES:     matrix-valued X-linear twisting moment.
/// All entries live in the symbol space (polynomials in eta, values in
/// Lambda(R^n) (x) Mat(r) (x) C[g]_(J)).
struct CurvatureModel {
  int n = 0, r = 1;
  Space ssp;
  std::vector<std::vector<GradedElem>> R;
  std::vector<std::vector<GradedElem>> muM;
  std::vector<std::vector<GradedElem>> F2;
  GradedElem muES;
};

inline Space symbol_space(int n, int r, int lie_dim, int J) {
  Space sp;
  sp.chart_dim = n;
  sp.vsplit = n;
  sp.lie_dim = lie_dim;
  sp.J = J;
  sp.fiber_dim = n;
  sp.mat_dim = r;
  sp.alg = Alg::Exterior;
  return sp;
}

inline CurvatureModel zero_curvature(int n, int r, int lie_dim, int J) {
  CurvatureModel K;
  K.n = n;
  K.r = r;
  K.ssp = symbol_space(n, r, lie_dim, J);
  K.R.assign(n, std::vector<GradedElem>(n, GradedElem::zero(K.ssp)));
  K.muM = K.R;
  K.F2 = K.R;
  K.muES = GradedElem::zero(K.ssp);
  return K;
}

using SymbolSection = GradedElem;

/// gamma(R)(e_a, e_j) = (1/2) R[a][j]: the Lambda^2-valued part of the
/// curvature.  The twisting part of the connection coefficient has End
/// filtration degree 0 and therefore drops out of the zero-fiber symbol; it
/// re-enters only through the quantized curvature term (twisting_value).
inline GradedElem curvature_slot(const CurvatureModel& K, int a, int j) {
  return K.R[a][j] * Rational(1, 2);
}

/// Full connection-coefficient curvature value (used to build the model
/// connection): gamma(R) + F^{E/S} slots.
inline GradedElem connection_slot(const CurvatureModel& K, int a, int j) {
  return K.R[a][j] * Rational(1, 2) + K.F2[a][j];
}

/// Symbol of nabla_{e_j}: s |-> d_j s + (1/2) gamma(R)(eta, e_j) ^ s.
inline SymbolSection sym_nabla(const CurvatureModel& K, int j, const SymbolSection& s) {
  SymbolSection out = s.dchart(j);
  for (int a = 0; a < K.n; ++a) {
    GradedElem slot = curvature_slot(K, a, j);
    if (slot.is_zero()) continue;
    out += GradedElem::chart_var(K.ssp, a) * slot * s * Rational(1, 2);
  }
  return out;
}

/// Symbol of the Clifford action c(e_j): exterior multiplication.
inline SymbolSection sym_clifford(const CurvatureModel& K, int j, const SymbolSection& s) {
  return GradedElem::gen(K.ssp, j) * s;
}

/// Symbol of multiplication by a Lie polynomial (with J-truncation).
inline SymbolSection sym_poly(const GradedElem& p, const SymbolSection& s) { return p * s; }

/// Symbol of the conjugate connection: sym_nabla + (1/4)(muM(X) eta, e_j) s.
inline SymbolSection sym_conj_nabla(const CurvatureModel& K, int j, const SymbolSection& s) {
  SymbolSection out = sym_nabla(K, j, s);
  for (int a = 0; a < K.n; ++a) {
    if (K.muM[a][j].is_zero()) continue;
    out += GradedElem::chart_var(K.ssp, a) * K.muM[a][j] * s * Rational(1, 4);
  }
  return out;
}

/// The equivariant twisting curvature as a fiber value: sum_{i<j} e_i^e_j
/// (x) F2[i][j] + muES.
inline GradedElem twisting_value(const CurvatureModel& K) {
  GradedElem F = K.muES;
  for (int i = 0; i < K.n; ++i)
    for (int j = i + 1; j < K.n; ++j) {
      if (K.F2[i][j].is_zero()) continue;
      F += GradedElem::blade(K.ssp, (uint32_t(1) << i) | (uint32_t(1) << j)) * K.F2[i][j];
    }
  return F;
}

/// Generalized harmonic oscillator:
///   - sum_i ( d_i - (1/4) sum_j (R_ij + muM_ij(X)) eta^j )^2 + F + muES.
inline SymbolSection harmonic_oscillator(const CurvatureModel& K, const SymbolSection& s) {
  auto Ai = [&](int i, const SymbolSection& v) {
    SymbolSection out = v.dchart(i);
    for (int j = 0; j < K.n; ++j) {
      GradedElem coeff = K.R[i][j] + K.muM[i][j];
      if (coeff.is_zero()) continue;
      out -= GradedElem::chart_var(K.ssp, j) * coeff * v * Rational(1, 4);
    }
    return out;
  };
  SymbolSection out = GradedElem::zero(K.ssp);
  for (int i = 0; i < K.n; ++i) out -= Ai(i, Ai(i, s));
  out += twisting_value(K) * s;
  return out;
}

/// Model connection on the Clifford bundle whose zero-fiber symbols are the
/// sym_* formulas: radial gauge A_j = 1/2 sum_i y^i q(K(e_i, e_j)).
inline rescale::ConnectionData model_connection(const CurvatureModel& K,
                                                const rescale::FilteredModel& m) {
  std::vector<std::vector<GradedElem>> Theta(
      K.n, std::vector<GradedElem>(K.n, GradedElem::zero(m.ssp)));
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j) {
      GradedElem slot = connection_slot(K, i, j);
      if (slot.is_zero()) continue;
      Theta[i][j] = reinterpret_blades(slot, m.ssp);  // quantize: same masks, Cl tag
    }
  return rescale::radial_connection(m, Theta);
}

}  // namespace eqindex::symbols
