#pragma once

#include <stdexcept>

#include "eqindex/graded.hpp"

namespace eqindex::gradealg {

/// Multivector: element of Lambda(R^n) or Cl(n) over Scalar, basis indexed by
/// subsets of {0..n-1}.  TwistedElement: Multivector-valued square matrix
/// (the twisting factor End_Cl in the Clifford-module picture).
using Multivector = GradedElem;
using TwistedElement = GradedElem;

inline Space mv_space(int n, Alg alg, int r = 1) {
  Space sp;
  sp.fiber_dim = n;
  sp.mat_dim = r;
  sp.alg = alg;
  return sp;
}
inline Space exterior_space(int n, int r = 1) { return mv_space(n, Alg::Exterior, r); }
inline Space clifford_space(int n, int r = 1) { return mv_space(n, Alg::Clifford, r); }

inline Multivector basis(const Space& sp, uint32_t mask) { return Multivector::blade(sp, mask); }
inline Multivector e(const Space& sp, int i) { return Multivector::gen(sp, i); }

inline void require_same_dim(const Multivector& a, const Multivector& b) {
  if (a.space().fiber_dim != b.space().fiber_dim)
    throw std::invalid_argument("multivector dimension mismatch");
}

inline Multivector wedge(const Multivector& a, const Multivector& b) {
  require_same_dim(a, b);
  if (a.space().alg != Alg::Exterior || b.space().alg != Alg::Exterior)
    throw std::invalid_argument("wedge: operands must be exterior-tagged");
  return a * b;
}

inline Multivector clifford_mul(const Multivector& a, const Multivector& b) {
  require_same_dim(a, b);
  if (a.space().alg != Alg::Clifford || b.space().alg != Alg::Clifford)
    throw std::invalid_argument("clifford_mul: operands must be clifford-tagged");
  return a * b;
}

/// Quantization q: Lambda(R^n) -> Cl(n), e_{i1}^...^e_{ik} |-> e_{i1}...e_{ik}.
inline Multivector quantize(const Multivector& a) {
  if (a.space().alg != Alg::Exterior) throw std::invalid_argument("quantize: expects exterior input");
  return a.with_alg(Alg::Clifford);
}

/// Symbol map sigma = q^{-1}: Cl(n) -> Lambda(R^n).
inline Multivector symbol_map(const Multivector& a) {
  if (a.space().alg != Alg::Clifford) throw std::invalid_argument("symbol_map: expects clifford input");
  return a.with_alg(Alg::Exterior);
}

/// Berezin supertrace on Cl(n) (x) Mat(r), n even:
///   str = (-2i)^{n/2} * tr( coefficient of the top generator e_{0...n-1} ).
/// Returns a blade-free element (a Scalar-valued polynomial when the entries
/// carry chart or Lie parameters).
inline GradedElem berezin_str(const TwistedElement& a) {
  int n = a.space().fiber_dim;
  if (n % 2 != 0) throw std::invalid_argument("berezin_str: odd fiber dimension");
  uint32_t top = (n == 32) ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
  int m = n / 2;
  // (-2i)^{n/2} = 2^{n/2} * (-i)^{n/2}, and -i = i^3.
  Scalar c = Scalar::monomial(Rational(BigInt(1) << m), 3 * m, 0);
  return a.blade_coeff(top).mat_trace() * c;
}

/// Scalar value of the Berezin supertrace for parameter-free input.
inline Scalar berezin_str_scalar(const TwistedElement& a) {
  GradedElem g = berezin_str(a);
  if (g.is_zero()) return Scalar::zero();
  return g.scalar_value();
}

}  // namespace eqindex::gradealg
