#pragma once

#include <map>

#include "eqindex/charforms.hpp"
#include "eqindex/symbol_ops.hpp"

namespace eqindex::mehler {

using symbols::CurvatureModel;

/// Laurent polynomial in the formal time tau with coefficients in the symbol
/// ring; the implicit prefactor (4 pi tau)^{-n/2} e^{-|xi|^2 / 4 tau} is never
/// expanded, differentiation goes through the conjugated rules below.
struct GaussianElement {
  int n = 0;
  Space ssp;
  std::map<int, GradedElem> body;

  static GaussianElement zero(int n, const Space& sp) { return {n, sp, {}}; }
  static GaussianElement free_kernel(int n, const Space& sp) {
    GaussianElement g{n, sp, {}};
    g.body.emplace(0, GradedElem::one(sp));
    return g;
  }

  void add(int tpow, const GradedElem& v) {
    if (v.is_zero()) return;
    auto it = body.find(tpow);
    if (it == body.end()) {
      body.emplace(tpow, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) body.erase(it);
    }
  }
  bool is_zero() const { return body.empty(); }
  int min_tau_power() const { return body.empty() ? 0 : body.begin()->first; }

  GradedElem at(int tpow) const {
    auto it = body.find(tpow);
    return it == body.end() ? GradedElem::zero(ssp) : it->second;
  }

  std::string str() const {
    std::string s;
    for (const auto& [t, v] : body)
      s += "tau^" + std::to_string(t) + " * [ " + v.str() + " ]\n";
    return s.empty() ? "0" : s;
  }
};

/// Conjugated derivative rules (the honest derivatives of prefactor *
/// Gaussian * body expressed on the body):
///   d_i     |->  d_i - xi_i / (2 tau)
///   d_tau   |->  d_tau + |xi|^2 / (4 tau^2) - n / (2 tau)
inline GaussianElement d_xi(const GaussianElement& g, int i) {
  GaussianElement r{g.n, g.ssp, {}};
  for (const auto& [t, v] : g.body) {
    r.add(t, v.dchart(i));
    r.add(t - 1, GradedElem::chart_var(g.ssp, i) * v * Rational(-1, 2));
  }
  return r;
}

inline GaussianElement d_tau(const GaussianElement& g) {
  GaussianElement r{g.n, g.ssp, {}};
  GradedElem xi2(g.ssp);
  for (int i = 0; i < g.ssp.chart_dim; ++i) {
    GradedElem x = GradedElem::chart_var(g.ssp, i);
    xi2 += x * x;
  }
  for (const auto& [t, v] : g.body) {
    if (t != 0) r.add(t - 1, v * Rational(t));
    r.add(t - 2, xi2 * v * Rational(1, 4));
    r.add(t - 1, v * Rational(-g.n, 2));
  }
  return r;
}

inline GaussianElement mul_value(const GradedElem& w, const GaussianElement& g) {
  GaussianElement r{g.n, g.ssp, {}};
  for (const auto& [t, v] : g.body) r.add(t, w * v);
  return r;
}

/// Generalized harmonic oscillator acting through the Gaussian:
///   -(sum_i (d_i - 1/4 sum_j (R_ij + muM_ij) xi^j)^2) + F + muES.
inline GaussianElement heat_operator(const CurvatureModel& K, const GaussianElement& g) {
  auto Ai = [&](int i, const GaussianElement& v) {
    GaussianElement out = d_xi(v, i);
    for (int j = 0; j < K.n; ++j) {
      GradedElem coeff = K.R[i][j] + K.muM[i][j];
      if (coeff.is_zero()) continue;
      GradedElem w = GradedElem::chart_var(K.ssp, j) * coeff * Rational(-1, 4);
      GaussianElement t = mul_value(w, v);
      for (const auto& [tp, tv] : t.body) out.add(tp, tv);
    }
    return out;
  };
  GaussianElement out{g.n, g.ssp, {}};
  for (int i = 0; i < K.n; ++i) {
    GaussianElement a2 = Ai(i, Ai(i, g));
    for (const auto& [tp, tv] : a2.body) out.add(tp, -tv);
  }
  GaussianElement pot = mul_value(symbols::twisting_value(K), g);
  for (const auto& [tp, tv] : pot.body) out.add(tp, tv);
  return out;
}

namespace detail {

using TauPoly = std::map<int, GradedElem>;

inline TauPoly tp_mul(const Space& sp, const TauPoly& a, const TauPoly& b) {
  TauPoly r;
  for (const auto& [ta, va] : a)
    for (const auto& [tb, vb] : b) {
      GradedElem p = va * vb;
      if (p.is_zero()) continue;
      auto it = r.find(ta + tb);
      if (it == r.end())
        r.emplace(ta + tb, p);
      else {
        it->second += p;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  (void)sp;
  return r;
}

/// exp of a tau-polynomial whose coefficients are nilpotent.
inline TauPoly tp_exp(const Space& sp, const TauPoly& a, int hard_cap = 64) {
  TauPoly sum{{0, GradedElem::one(sp)}};
  TauPoly pw{{0, GradedElem::one(sp)}};
  Rational fact = 1;
  for (int k = 1; k <= hard_cap; ++k) {
    pw = tp_mul(sp, pw, a);
    if (pw.empty()) return sum;
    fact *= k;
    for (const auto& [t, v] : pw) {
      GradedElem sc = v * Scalar::from_rational(Rational(1) / fact);
      auto it = sum.find(t);
      if (it == sum.end())
        sum.emplace(t, sc);
      else {
        it->second += sc;
        if (it->second.is_zero()) sum.erase(it);
      }
    }
  }
  throw std::domain_error("tp_exp: coefficients are not nilpotent");
}

/// Matrix powers of the equivariant curvature R_g = R + muM.
inline std::vector<std::vector<std::vector<GradedElem>>> rg_even_powers(const CurvatureModel& K,
                                                                        int kmax) {
  int n = K.n;
  std::vector<std::vector<GradedElem>> Rg(n, std::vector<GradedElem>(n, GradedElem::zero(K.ssp)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Rg[i][j] = K.R[i][j] + K.muM[i][j];
  auto matmul = [&](const auto& A, const auto& B) {
    std::vector<std::vector<GradedElem>> C(n, std::vector<GradedElem>(n, GradedElem::zero(K.ssp)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (A[i][l].is_zero()) continue;
        for (int j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
      }
    return C;
  };
  std::vector<std::vector<std::vector<GradedElem>>> pows;  // pows[m] = Rg^{2(m+1)}
  auto sq = matmul(Rg, Rg);
  auto cur = sq;
  for (int m = 1; 2 * m <= kmax; ++m) {
    pows.push_back(cur);
    cur = matmul(cur, sq);
  }
  return pows;
}

}  // namespace detail

/// Mehler kernel of the generalized harmonic oscillator, as a Gaussian-Laurent
/// element: (4 pi tau)^{-n/2} det^{1/2}( (tau R_g/2)/sinh(tau R_g/2) )
/// exp( -(1/4tau) <xi| (tau R_g/2) coth(tau R_g/2) - 1 |xi> ) exp(-tau F_g),
/// all three series finite by nilpotency of R_g and F_g.
inline GaussianElement mehler_kernel(const CurvatureModel& K) {
  const Space& sp = K.ssp;
  const int n = K.n;
  int cap = n + 2 * sp.J + 2;
  auto pows = detail::rg_even_powers(K, cap);

  // det^{1/2}: exp( 1/2 sum_k p_{2k} tau^{2k} tr(Rg^{2k}) )
  RatSeries p = ahat_log(cap);
  detail::TauPoly logdet;
  for (size_t m = 0; m < pows.size(); ++m) {
    int k2 = 2 * int(m + 1);
    GradedElem tr(sp);
    for (int i = 0; i < n; ++i) tr += pows[m][i][i];
    GradedElem coeff = tr * Scalar::from_rational(p[k2] / 2);
    if (!coeff.is_zero()) logdet[k2] = coeff;
  }
  detail::TauPoly det_factor = detail::tp_exp(sp, logdet);

  // Gaussian correction: -(1/4) sum_k q_{2k} tau^{2k-1} <xi| Rg^{2k} |xi>
  RatSeries q = coth_half(cap);
  detail::TauPoly expo;
  for (size_t m = 0; m < pows.size(); ++m) {
    int k2 = 2 * int(m + 1);
    GradedElem quad(sp);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (pows[m][i][j].is_zero()) continue;
        quad += GradedElem::chart_var(sp, i) * GradedElem::chart_var(sp, j) * pows[m][i][j];
      }
    GradedElem coeff = quad * Scalar::from_rational(-q[k2] / 4);
    if (!coeff.is_zero()) expo[k2 - 1] = coeff;
  }
  detail::TauPoly gauss_corr = detail::tp_exp(sp, expo);

  // twisting factor exp(-tau F_g)
  detail::TauPoly twist;
  GradedElem Fg = symbols::twisting_value(K);
  if (!Fg.is_zero()) twist[1] = -Fg;
  detail::TauPoly twist_factor = detail::tp_exp(sp, twist);

  detail::TauPoly body = detail::tp_mul(sp, detail::tp_mul(sp, det_factor, gauss_corr), twist_factor);
  GaussianElement g{n, sp, {}};
  for (const auto& [t, v] : body) g.add(t, v);
  return g;
}

/// Residual of the rescaled heat equation (d_tau + H) K_tau; identically zero
/// in the Gaussian-Laurent ring for the Mehler kernel.
inline GaussianElement verify_heat_equation(const CurvatureModel& K) {
  GaussianElement ker = mehler_kernel(K);
  GaussianElement r = d_tau(ker);
  GaussianElement h = heat_operator(K, ker);
  for (const auto& [t, v] : h.body) r.add(t, v);
  return r;
}

/// Supertrace of the kernel at tau = 1, xi = 0: the Berezin coefficient
/// (top blade, X kept, matrix traced) times (4 pi)^{-n/2}.  Exactly equal to
/// (2 pi i)^{-n/2} [Ahat_g Ch_g]_top; the comparison partner is built in
/// curvature_to_forms below.
inline GradedElem kernel_supertrace_at_one(const CurvatureModel& K) {
  GaussianElement ker = mehler_kernel(K);
  GradedElem v(K.ssp);
  for (const auto& [t, b] : ker.body) v += b;  // tau = 1
  for (int i = 0; i < K.n; ++i) v = v.subst_chart(i, 0);  // xi = 0

  Space osp;
  osp.lie_dim = K.ssp.lie_dim;
  osp.J = K.ssp.J;
  const int n = K.n;
  uint32_t top = (uint32_t(1) << n) - 1;
  // (-2i)^{n/2} * (4 pi)^{-n/2} = (2 pi i)^{-n/2}; assemble both factors exactly
  Scalar berezin = Scalar::monomial(Rational(BigInt(1) << (n / 2)), 3 * (n / 2), 0);
  Scalar fourpi = Scalar::monomial(Rational(1, BigInt(1) << (n / 2)), 0, -(n / 2));
  GradedElem out(osp);
  for (const auto& [t, c] : v.terms()) {
    if (t.blade != top || t.row != t.col) continue;
    Mono m(osp.chart_dim + osp.lie_dim, 0);
    for (int a = 0; a < osp.lie_dim; ++a) m[osp.chart_dim + a] = t.mono[K.ssp.chart_dim + a];
    out.add_term(0, 0, 0, m, c * berezin * fourpi);
  }
  return out;
}

/// Exact Gaussian moments: integral of (4 pi tau)^{-n/2} e^{-|xi|^2/4tau}
/// xi^alpha over R^n is prod_i (2k_i - 1)!! (2 tau)^{k_i} for alpha = 2k
/// (zero for odd exponents).  The result is a Laurent polynomial in tau with
/// chart-free values.
inline std::map<int, GradedElem> moment_functional(const GaussianElement& g) {
  Space osp = g.ssp;
  osp.chart_dim = 0;
  osp.vsplit = 0;
  std::map<int, GradedElem> out;
  for (const auto& [t, v] : g.body) {
    for (const auto& [k, c] : v.terms()) {
      Rational mom = 1;
      int tshift = 0;
      bool odd = false;
      for (int i = 0; i < g.ssp.chart_dim; ++i) {
        int e = k.mono[i];
        if (e % 2) {
          odd = true;
          break;
        }
        int half = e / 2;
        for (int j = 1; j <= half; ++j) mom *= (2 * j - 1) * 2;  // (2k-1)!! 2^k
        tshift += half;
      }
      if (odd || mom == 0) continue;
      Mono mo(osp.lie_dim, 0);
      for (int a = 0; a < osp.lie_dim; ++a) mo[a] = k.mono[g.ssp.chart_dim + a];
      int tp = t + tshift;
      auto it = out.find(tp);
      if (it == out.end()) it = out.emplace(tp, GradedElem::zero(osp)).first;
      it->second.add_term(k.blade, k.row, k.col, mo, c * mom);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// Principal anti-automorphism: blade reversal (sign (-1)^{k(k-1)/2}) tensor
/// matrix transpose.  Used in the pairing for formal self-adjointness.
inline GradedElem reversal(const GradedElem& a) {
  GradedElem r(a.space());
  for (const auto& [k, v] : a.terms()) {
    int deg = blade_deg(k.blade);
    int sgn = ((deg * (deg - 1) / 2) % 2) ? -1 : 1;
    r.add_term(k.blade, k.col, k.row, k.mono, sgn < 0 ? -v : v);
  }
  return r;
}

/// Pairing <f, g> = tr moments( reversal(f) * g ) of a polynomial section
/// against a Gaussian element; the Gaussian weight lives in the g slot.
inline std::map<int, GradedElem> gauss_pairing(const GradedElem& f, const GaussianElement& g) {
  GaussianElement fg = mul_value(reversal(f), g);
  auto m = moment_functional(fg);
  for (auto& [t, v] : m) v = v.mat_trace();
  for (auto it = m.begin(); it != m.end();)
    it = it->second.is_zero() ? m.erase(it) : std::next(it);
  return m;
}

/// The independent Cartan-model route: equivariant curvature matrix and
/// twisting curvature as chart forms, for ahat / ch_rel.
struct CurvatureForms {
  Space scalar_sp;  // mat 1 forms
  Space twist_sp;   // mat r forms
  ElemMat Rg;       // n x n antisymmetric, scalar-form entries
  GradedElem Fg;    // matrix-valued equivariant twisting curvature
};

inline CurvatureForms curvature_to_forms(const CurvatureModel& K) {
  CurvatureForms cf;
  cf.scalar_sp = eqforms::form_space(K.n, K.ssp.lie_dim, K.ssp.J, 1);
  cf.twist_sp = eqforms::form_space(K.n, K.ssp.lie_dim, K.ssp.J, K.r);
  cf.Rg = ElemMat::zero(K.n, cf.scalar_sp);
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j) {
      GradedElem e = K.R[i][j] + K.muM[i][j];
      if (e.is_zero()) continue;
      cf.Rg(i, j) = central_part(e, cf.scalar_sp);  // Lambda^2 values -> dx forms
    }
  GradedElem Fg(cf.twist_sp);
  for (int i = 0; i < K.n; ++i)
    for (int j = i + 1; j < K.n; ++j) {
      if (K.F2[i][j].is_zero()) continue;
      GradedElem fij = reinterpret_blades(K.F2[i][j], cf.twist_sp);
      Fg += GradedElem::blade(cf.twist_sp, (uint32_t(1) << i) | (uint32_t(1) << j)) * fij;
    }
  Fg += reinterpret_blades(K.muES, cf.twist_sp);
  cf.Fg = Fg;
  return cf;
}

/// (2 pi i)^{-n/2} [Ahat_g Ch_g]_top as an exact X-polynomial (chart-free).
inline GradedElem equivariant_class_top(const CurvatureModel& K) {
  CurvatureForms cf = curvature_to_forms(K);
  GradedElem ahat_form = eqforms::ahat(cf.Rg);
  GradedElem ch_form = eqforms::ch_rel(cf.Fg);
  GradedElem prod = ahat_form * ch_form;
  uint32_t top = (uint32_t(1) << K.n) - 1;
  GradedElem topc = prod.blade_coeff(top);
  Space osp;
  osp.lie_dim = K.ssp.lie_dim;
  osp.J = K.ssp.J;
  // (2 pi i)^{-n/2} = i^{-n/2} (2pi)^{-n/2}
  Scalar norm = Scalar::monomial(1, -(K.n / 2), -(K.n / 2));
  return drop_chart(topc, osp) * norm;
}

}  // namespace eqindex::mehler
