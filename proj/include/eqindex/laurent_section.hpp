#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqindex/eqforms.hpp"
#include "eqindex/gradealg.hpp"
#include "eqindex/orders.hpp"

namespace eqindex::rescale {

/// Element of the rescaled module: sum_p s_p t^{-p} with o^sc(s_p) >= p.
struct LaurentSection {
  std::map<int, GradedElem> terms;

  void add(int p, const GradedElem& s) {
    if (s.is_zero()) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, s);
    } else {
      it->second += s;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

struct MembershipResult {
  bool member = true;
  bool conclusive = true;
  std::string witness;
};

/// Rescaled-module membership via the Taylor order (= scaling order).  A zero
/// coefficient has order +inf; a section supported off M would have order
/// -inf and is admitted at every degree.
inline MembershipResult section_membership(const FilteredModel& m, const ConnectionData& conn,
                                           const LaurentSection& s) {
  MembershipResult r;
  for (const auto& [p, sp] : s.terms) {
    auto ord = taylor_order(m, conn, sp);
    if (!ord.stable) r.conclusive = false;
    if (ord.value == kNegInf) continue;  // off-M-supported: member of every degree
    if (ord.value < p) {
      r.member = false;
      r.witness = "coefficient at t^-" + std::to_string(p) + " has order " +
                  std::to_string(ord.value);
      return r;
    }
  }
  return r;
}

/// Generic-fiber evaluation sum_p s_p(v) lambda^{-p}.
inline GradedElem eval_section_generic(const FilteredModel& m, const LaurentSection& s,
                                       const std::vector<Rational>& v, const Rational& lambda) {
  if (lambda == 0) throw std::invalid_argument("eval_section_generic: lambda must be nonzero");
  GradedElem out = GradedElem::zero(m.ssp);
  for (const auto& [p, sp] : s.terms) {
    GradedElem g = sp;
    for (int i = 0; i < m.ssp.chart_dim; ++i) g = g.subst_chart(i, v.at(i));
    Rational lp = 1;
    for (int t = 0; t < (p >= 0 ? p : -p); ++t) lp *= lambda;
    out += g * (p >= 0 ? Rational(1) / lp : lp);
  }
  return out;
}

/// Output space of the zero-fiber evaluation: polynomials in the normal-fiber
/// coordinates eta with values in gr(F) (exterior blades for fiber models).
inline Space zero_fiber_space(const FilteredModel& m) {
  Space o;
  o.chart_dim = m.k;
  o.vsplit = m.k;
  o.lie_dim = m.ssp.lie_dim;
  o.J = m.ssp.J;
  o.fiber_dim = m.ssp.fiber_dim;
  o.mat_dim = m.ssp.mat_dim;
  o.alg = Alg::Exterior;  // gr(Cl) = Lambda
  return o;
}

/// Zero-fiber evaluation map eps_{X_m} s = eps_m( exp(t nabla_X) s ) with a
/// formal normal vector: the result is a polynomial in eta = (eta_1..eta_k)
/// valued in gr(F)_m.  Base point given by the horizontal coordinates.
inline GradedElem eval_section_zero(const FilteredModel& m, const ConnectionData& conn,
                                    const LaurentSection& s,
                                    const std::vector<Rational>& base_x) {
  // working space: chart = (eta | x | y), vertical = y
  Space W = m.ssp;
  W.chart_dim = m.l + 2 * m.k;
  W.vsplit = m.k + m.l;
  const int shift = m.k;  // original chart index i -> W index shift + i

  auto lift = [&](const GradedElem& g) {
    GradedElem out(W);
    for (const auto& [t, c] : g.terms()) {
      Mono mo(W.chart_dim + W.lie_dim, 0);
      for (int i = 0; i < m.ssp.chart_dim; ++i) mo[shift + i] = t.mono[i];
      for (int a = 0; a < m.ssp.lie_dim; ++a) mo[W.chart_dim + a] = t.mono[m.ssp.chart_dim + a];
      out.add_term(t.blade, t.row, t.col, mo, c);
    }
    return out;
  };

  std::vector<GradedElem> Alift;
  for (int j = 0; j < m.k; ++j) Alift.push_back(lift(conn.A.at(m.l + j)));

  auto op_T = [&](const GradedElem& g) {  // sum_j eta_j (d_{y_j} + A_j)
    GradedElem out(W);
    for (int j = 0; j < m.k; ++j) {
      GradedElem dg = g.dchart(shift + m.l + j) + Alift[j] * g;
      out += GradedElem::chart_var(W, j) * dg;
    }
    return out;
  };

  auto filt_W = [&](const TermKey& t) {
    if (m.fiber_model) {
      int lie = 0;
      for (int a = 0; a < W.lie_dim; ++a) lie += t.mono[W.chart_dim + a];
      return m.blade_weight * blade_deg(t.blade) + m.lie_weight * lie;
    }
    return m.q.at(t.row);
  };

  Space O = zero_fiber_space(m);
  GradedElem out(O);
  const int maxf = m.max_filt();

  for (const auto& [p, sp] : s.terms) {
    GradedElem base = lift(sp);
    for (int i = 0; i < m.l; ++i) base = base.subst_chart(shift + i, base_x.at(i));
    GradedElem acc = base;
    Rational fact = 1;
    for (int kk = 0; kk <= p + maxf; ++kk) {
      if (kk > 0) {
        acc = op_T(acc);
        fact *= kk;
      }
      int grade = kk - p;
      if (grade >= 0 && grade <= maxf) {
        GradedElem v = acc.restrict_vertical_zero();
        for (const auto& [t, c] : v.terms()) {
          if (filt_W(t) != grade) continue;
          Mono mo(O.chart_dim + O.lie_dim, 0);
          for (int j = 0; j < m.k; ++j) mo[j] = t.mono[j];
          for (int a = 0; a < O.lie_dim; ++a) mo[O.chart_dim + a] = t.mono[W.chart_dim + a];
          out.add_term(t.blade, t.row, t.col, mo, c * (Rational(1) / fact));
        }
      }
      if (acc.is_zero()) break;
    }
  }
  return out;
}

/// Zero-fiber evaluation with the membership precondition enforced.
inline GradedElem eval_section_zero_checked(const FilteredModel& m, const ConnectionData& conn,
                                            const LaurentSection& s,
                                            const std::vector<Rational>& base_x) {
  auto mem = section_membership(m, conn, s);
  if (!mem.member)
    throw std::invalid_argument("eval_section_zero: not a rescaled-module member: " + mem.witness);
  return eval_section_zero(m, conn, s, base_x);
}

/// Substitute a rational normal vector into a zero-fiber evaluation.
inline GradedElem eval_at_eta(const FilteredModel& m, const GradedElem& val,
                              const std::vector<Rational>& eta) {
  GradedElem g = val;
  for (int j = 0; j < m.k; ++j) g = g.subst_chart(j, eta.at(j));
  return g;
}

namespace detail {

inline bool rational_rank_full(std::vector<std::vector<Rational>> rows) {
  size_t nrow = rows.size();
  if (nrow == 0) return true;
  size_t ncol = rows[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < ncol && rank < nrow; ++c) {
    size_t piv = rank;
    while (piv < nrow && rows[piv][c] == 0) ++piv;
    if (piv == nrow) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r2 = 0; r2 < nrow; ++r2) {
      if (r2 == rank || rows[r2][c] == 0) continue;
      Rational f = rows[r2][c] / rows[rank][c];
      for (size_t cc = c; cc < ncol; ++cc) rows[r2][cc] -= f * rows[rank][cc];
    }
    ++rank;
  }
  return rank == nrow;
}

inline std::vector<Rational> flatten_value(const FilteredModel& m, const GradedElem& v) {
  // coordinates indexed by (blade, row, col, lie monomial) -- collect keys first
  std::vector<Rational> coords;
  std::map<TermKey, Rational> entries;
  for (const auto& [t, c] : v.terms()) {
    if (!c.is_rational()) throw std::domain_error("frame_rank_test: non-rational value");
    entries[t] = c.rational_value();
  }
  // dense layout over blades x mat for lie-free values
  int nb = 1 << m.ssp.fiber_dim;
  int r = m.ssp.mat_dim;
  coords.assign(size_t(nb) * r * r, Rational(0));
  for (const auto& [t, q] : entries) {
    for (auto e : t.mono)
      if (e) throw std::domain_error("frame_rank_test: value not constant");
    coords[(size_t(t.blade) * r + t.row) * r + t.col] = q;
  }
  return coords;
}

}  // namespace detail

struct SamplePoint {
  bool zero_fiber = true;
  std::vector<Rational> base_x;  // size l (zero fiber) or l+k (generic)
  std::vector<Rational> eta;     // size k (zero fiber only)
  Rational lambda = 1;           // generic only
};

/// Constant-rank test for a candidate frame of the rescaled module: the
/// evaluated vectors must be linearly independent at every sample point,
/// zero-fiber points included.
inline bool frame_rank_test(const FilteredModel& m, const ConnectionData& conn,
                            const std::vector<LaurentSection>& frame,
                            const std::vector<SamplePoint>& samples) {
  for (const auto& pt : samples) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : frame) {
      GradedElem v = pt.zero_fiber
                         ? eval_at_eta(m, eval_section_zero(m, conn, s, pt.base_x), pt.eta)
                         : eval_section_generic(m, s, pt.base_x, pt.lambda);
      rows.push_back(detail::flatten_value(m, v));
    }
    if (!detail::rational_rank_full(std::move(rows))) return false;
  }
  return true;
}

/// Result of the Str_t functional on a rescaled section over the Clifford
/// model bundle: t^{-n} str(s(m, t)) as a Laurent polynomial in t with
/// coefficients polynomial in X.
struct StrT {
  std::map<int, GradedElem> coeff;  // t-power -> X-polynomial (Scalar space)
  bool no_negative_powers = true;
  GradedElem value_at_zero;     // t^0 coefficient
  GradedElem zero_fiber_value;  // Berezin supertrace of the grade-n part of eps_0(s)
};

/// Scalar-valued output space for supertraces (keeps the Lie variables).
inline Space str_space(const FilteredModel& m) {
  Space sp;
  sp.lie_dim = m.ssp.lie_dim;
  sp.J = m.ssp.J;
  return sp;
}

inline GradedElem berezin_top(const FilteredModel& m, const GradedElem& v, const Space& out_sp) {
  const int n = m.ssp.fiber_dim;
  uint32_t top = (uint32_t(1) << n) - 1;
  Scalar c = Scalar::monomial(Rational(BigInt(1) << (n / 2)), 3 * (n / 2), 0);  // (-2i)^{n/2}
  GradedElem out(out_sp);
  for (const auto& [t, s] : v.terms()) {
    if (t.blade != top || t.row != t.col) continue;
    Mono mo(out_sp.chart_dim + out_sp.lie_dim, 0);
    for (int a = 0; a < out_sp.lie_dim; ++a) mo[out_sp.chart_dim + a] = t.mono[v.space().chart_dim + a];
    out.add_term(0, 0, 0, mo, s * c);
  }
  return out;
}

/// Str_t over the Clifford model bundle at base point m (l = 0 model).
inline StrT str_t(const FilteredModel& m, const ConnectionData& conn, const LaurentSection& s,
                  const std::vector<Rational>& base_x = {}) {
  if (!m.fiber_model || m.ssp.alg != Alg::Clifford)
    throw std::invalid_argument("str_t: requires the Clifford model bundle");
  const int n = m.ssp.fiber_dim;
  if (n % 2 != 0) throw std::invalid_argument("str_t: even fiber dimension required");
  StrT r;
  Space osp = str_space(m);
  r.value_at_zero = GradedElem::zero(osp);
  for (const auto& [p, sp] : s.terms) {
    GradedElem v = sp;
    for (int i = 0; i < m.l; ++i) v = v.subst_chart(i, base_x.at(i));
    v = v.restrict_vertical_zero();
    GradedElem st = berezin_top(m, v, osp);
    if (st.is_zero()) continue;
    int tpow = -p - n;
    r.coeff[tpow] = st;
    if (tpow < 0) r.no_negative_powers = false;
    if (tpow == 0) r.value_at_zero = st;
  }
  // zero-fiber route: Berezin supertrace of the grade-n part of eps_0(s)
  GradedElem eps0 = eval_at_eta(m, eval_section_zero(m, conn, s, base_x),
                                std::vector<Rational>(m.k, Rational(0)));
  GradedElem graded = eps0.grade_part(n).with_alg(Alg::Clifford);
  // reinterpret into the Clifford value space for the Berezin coefficient
  r.zero_fiber_value = berezin_top(m, graded, osp);
  return r;
}

/// Witten / Novikov membership: does t (d + d* + t^{-2} chat(omega)) map the
/// rescaled module of the trivially filtered exterior bundle to itself?
/// omega is a one-form given by components (for the Witten case omega = df).
struct WittenResult {
  bool member = true;
  std::string witness;
};

inline WittenResult witten_membership(const FilteredModel& m, const ConnectionData& conn,
                                      const std::vector<GradedElem>& omega,
                                      const LaurentSection& s) {
  if (!m.fiber_model || m.blade_weight != 0)
    throw std::invalid_argument("witten_membership: requires the trivially filtered model");
  const int N = m.l + m.k;
  LaurentSection out;
  for (const auto& [p, sp] : s.terms) {
    // t (d + d*) s_p
    GradedElem dd(m.ssp);
    for (int c = 0; c < N; ++c) {
      GradedElem ds = sp.dchart(c);
      dd += GradedElem::gen(m.ssp, c) * ds - interior_gen(ds, c);
    }
    out.add(p - 1, dd);
    // t^{-1} chat(omega) s_p, chat(v) = ext(v) + iota(v)
    GradedElem ch(m.ssp);
    for (int c = 0; c < N; ++c) {
      if (omega.at(c).is_zero()) continue;
      ch += omega[c] * (GradedElem::gen(m.ssp, c) * sp + interior_gen(sp, c));
    }
    out.add(p + 1, ch);
  }
  WittenResult r;
  for (const auto& [p, sp] : out.terms) {
    if (p <= 0) continue;
    if (sp.min_vertical_degree() < p) {
      r.member = false;
      r.witness = "image coefficient at t^-" + std::to_string(p) + " vanishes only to order " +
                  std::to_string(sp.min_vertical_degree()) + ": " + sp.str();
      return r;
    }
  }
  return r;
}

}  // namespace eqindex::rescale
