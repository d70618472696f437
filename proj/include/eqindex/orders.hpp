#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "eqindex/filtered.hpp"

namespace eqindex::rescale {

/// Synchronous transport U with nabla_R U = 0, U|_{y=0} = Id, solved order by
/// order along the Euler field R = sum y^j d_{y^j} and truncated at the model
/// y-degree bound.  Synchronous sections are U * (y-independent values).
inline GradedElem synchronous_transport(const FilteredModel& m, const ConnectionData& conn) {
  GradedElem AR(m.ssp);  // A(R) = sum_j y^j A_{l+j}
  for (int j = 0; j < m.k; ++j)
    AR += GradedElem::chart_var(m.ssp, m.l + j) * conn.A.at(m.l + j);
  GradedElem U = GradedElem::one(m.ssp);
  for (int deg = 1; deg <= m.trunc; ++deg) {
    GradedElem corr = (AR * U).vertical_deg_part(deg) * Rational(-1, deg);
    if (corr.is_zero()) continue;
    U += corr;
  }
  return U;
}

/// Inverse of the synchronous transport as a y-degree-truncated Neumann series.
inline GradedElem transport_inverse(const FilteredModel& m, const GradedElem& U) {
  GradedElem N = U - GradedElem::one(m.ssp);
  GradedElem inv = GradedElem::one(m.ssp);
  GradedElem pw = GradedElem::one(m.ssp);
  for (int d = 1; d <= m.trunc; ++d) {
    pw = (pw * N).truncate_vertical_deg(m.trunc);
    if (pw.is_zero()) break;
    inv += (d % 2 ? -pw : pw);
  }
  return inv.truncate_vertical_deg(m.trunc);
}

/// One Taylor coefficient: y-multi-index I (stored as a chart-size monomial
/// supported on the vertical slots) and the restriction c_I of the synchronous
/// coefficient to M.  The full synchronous section is U * c_I.
struct TaylorCoeff {
  Mono index;
  GradedElem value;  // y-free
};

struct TaylorExpansion {
  std::vector<TaylorCoeff> coeffs;
  GradedElem U;
  int max_order = 0;  // coefficients with |I| <= max_order are complete
};

/// Taylor expansion of a section in the synchronous frame, up to y-degree N
/// (capped by the model truncation bound).
inline TaylorExpansion taylor_expand(const FilteredModel& m, const ConnectionData& conn,
                                     const GradedElem& sec, int N) {
  if (N > m.trunc) throw std::invalid_argument("taylor_expand: order exceeds model truncation");
  TaylorExpansion ex;
  ex.U = synchronous_transport(m, conn);
  ex.max_order = N;
  GradedElem g = (transport_inverse(m, ex.U) * sec).truncate_vertical_deg(N);
  // split g into y-monomial slices
  std::map<Mono, GradedElem> buckets;
  for (const auto& [t, v] : g.terms()) {
    Mono yI(m.ssp.chart_dim + m.ssp.lie_dim, 0);
    Mono rest = t.mono;
    for (int i = m.ssp.vsplit; i < m.ssp.chart_dim; ++i) {
      yI[i] = t.mono[i];
      rest[i] = 0;
    }
    auto it = buckets.find(yI);
    if (it == buckets.end()) it = buckets.emplace(yI, GradedElem(m.ssp)).first;
    it->second.add_term(t.blade, t.row, t.col, rest, v);
  }
  for (auto& [yI, val] : buckets) ex.coeffs.push_back({yI, val});
  return ex;
}

/// Re-sum a Taylor expansion below order N (oracle helper for tests).
inline GradedElem taylor_resum(const FilteredModel& m, const TaylorExpansion& ex, int N) {
  GradedElem s(m.ssp);
  for (const auto& c : ex.coeffs) {
    int deg = 0;
    for (int i = m.ssp.vsplit; i < m.ssp.chart_dim; ++i) deg += c.index[i];
    if (deg >= N) continue;
    GradedElem ymono = GradedElem::central(m.ssp, Scalar::one(), 0, c.index);
    s += ex.U * c.value * ymono;
  }
  return s;
}

struct OrderResult {
  int value = kPosInf;
  bool stable = true;  // truncation-stable
};

/// Taylor order o^t = min_I ( |I| - o^f(sigma_I) ), +inf for the zero section.
inline OrderResult taylor_order(const FilteredModel& m, const ConnectionData& conn,
                                const GradedElem& sec) {
  OrderResult r;
  if (sec.is_zero()) return r;
  auto ex = taylor_expand(m, conn, sec, m.trunc);
  for (const auto& c : ex.coeffs) {
    if (c.value.is_zero()) continue;
    int aI = 0;
    for (int i = m.ssp.vsplit; i < m.ssp.chart_dim; ++i) aI += c.index[i];
    int of = kNegInf;
    for (const auto& [t, v] : c.value.terms()) of = std::max(of, m.filt_of_term(t));
    r.value = std::min(r.value, aI - of);
  }
  // unseen coefficients at |I| > trunc contribute at least trunc+1 - max_filt
  r.stable = r.value <= m.trunc + 1 - m.max_filt();
  return r;
}

/// Differential operator sum_t phi_t nabla_{w_t}, with a declared Getzler
/// order bound (>= end_deg(phi) + |word| for every term).
struct DiffOpTerm {
  GradedElem phi;
  std::vector<int> word;  // direction indices, applied right to left
};

struct DiffOp {
  std::vector<DiffOpTerm> terms;
  int declared_order = 0;
};

inline int getzler_bound(const FilteredModel& m, const DiffOp& op) {
  int b = kNegInf;
  for (const auto& t : op.terms) {
    if (t.phi.is_zero()) continue;
    b = std::max(b, m.end_deg_of(t.phi) + int(t.word.size()));
  }
  return b;
}

inline DiffOp make_diffop(const FilteredModel& m, std::vector<DiffOpTerm> terms) {
  DiffOp op{std::move(terms), 0};
  op.declared_order = getzler_bound(m, op);
  return op;
}

inline GradedElem apply_diffop(const FilteredModel& m, const ConnectionData& conn, const DiffOp& op,
                               const GradedElem& sec) {
  GradedElem out = GradedElem::zero(sec.space());
  for (const auto& t : op.terms) {
    GradedElem w = sec;
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
      w = covariant_derivative(m, conn, *it, w);
    out += t.phi * w;
  }
  return out;
}

/// Covariant derivative of an End-valued section: d phi + [A_c, phi].
inline GradedElem end_covariant_derivative(const FilteredModel& m, const ConnectionData& conn,
                                           int c, const GradedElem& phi) {
  (void)m;
  return phi.dchart(c) + conn.A.at(c) * phi - phi * conn.A.at(c);
}

/// Composition rewritten into normal form (sums of phi nabla_word) by pushing
/// derivatives through coefficients with the End covariant derivative.
inline DiffOp compose_normal_form(const FilteredModel& m, const ConnectionData& conn,
                                  const DiffOp& d1, const DiffOp& d2) {
  std::vector<DiffOpTerm> out;
  // worklist of (phi1, pending word, phi2, word2)
  struct Item {
    GradedElem phi1;
    std::vector<int> w1;
    GradedElem phi2;
    std::vector<int> w2;
  };
  std::vector<Item> work;
  for (const auto& t1 : d1.terms)
    for (const auto& t2 : d2.terms) work.push_back({t1.phi, t1.word, t2.phi, t2.word});
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.w1.empty()) {
      GradedElem phi = it.phi1 * it.phi2;
      if (!phi.is_zero()) out.push_back({phi, it.w2});
      continue;
    }
    int c = it.w1.back();
    std::vector<int> w1 = it.w1;
    w1.pop_back();
    // nabla_c phi2 = phi2 nabla_c + (end covariant derivative of phi2)
    std::vector<int> cw2 = it.w2;
    cw2.insert(cw2.begin(), c);
    work.push_back({it.phi1, w1, it.phi2, cw2});
    GradedElem dphi = end_covariant_derivative(m, conn, c, it.phi2);
    if (!dphi.is_zero()) work.push_back({it.phi1, w1, dphi, it.w2});
  }
  DiffOp r{std::move(out), d1.declared_order + d2.declared_order};
  return r;
}

struct ScalingOrderResult {
  int value = kPosInf;
  bool conclusive = true;
};

/// Brute-force scaling order o^sc = min_D { o^g(D) - o^f(D sigma) } over
/// monomial vertical-derivative words |alpha| <= op_bound with End-basis
/// prefactors.  Flags the result inconclusive when the search did not
/// stabilize within the bound.
inline ScalingOrderResult scaling_order_bruteforce(const FilteredModel& m,
                                                   const ConnectionData& conn,
                                                   const GradedElem& sec, int op_bound) {
  ScalingOrderResult r;
  if (sec.is_zero()) return r;
  auto basis = m.end_basis();
  int best_below_bound = kPosInf;  // best over |alpha| <= op_bound - 1
  int best = kPosInf;

  // enumerate exponent vectors alpha over the k vertical directions
  std::vector<int> alpha(m.k, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == m.k) {
      GradedElem w = sec;
      int len = 0;
      for (int j = 0; j < m.k; ++j)
        for (int t = 0; t < alpha[j]; ++t) {
          w = covariant_derivative(m, conn, m.l + j, w);
          ++len;
        }
      int of = filtration_order(m, w);
      if (of != kNegInf) {
        int cand = len - of;
        best = std::min(best, cand);
        if (len < op_bound) best_below_bound = std::min(best_below_bound, cand);
      }
      for (const auto& phi : basis) {
        GradedElem pw = phi * w;
        int ofp = filtration_order(m, pw);
        if (ofp == kNegInf) continue;
        int og = m.end_deg_of(phi) + len;
        int cand = og - ofp;
        best = std::min(best, cand);
        if (len < op_bound) best_below_bound = std::min(best_below_bound, cand);
      }
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      alpha[pos] = e;
      rec(pos + 1, remaining - e);
    }
    alpha[pos] = 0;
  };
  rec(0, op_bound);

  r.value = best;
  r.conclusive = op_bound > 0 && best == best_below_bound && best != kPosInf;
  return r;
}

}  // namespace eqindex::rescale
