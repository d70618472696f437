#pragma once

#include <climits>
#include <string>
#include <vector>

#include "eqindex/graded.hpp"

namespace eqindex::rescale {

constexpr int kNegInf = INT_MIN / 4;
constexpr int kPosInf = INT_MAX / 4;

/// Filtered bundle over the local model V = R^{l+k}, M = R^l x {0}.
///
/// Two flavors share one interface:
///  - abstract: rank-r bundle with declared frame degrees q_i and an End
///    filtration degree on elementary matrices (sections are r-columns);
///  - fiber: the fiber is Lambda/Cl(n) (x) Mat(r) (x) C[g]_(J) and the
///    filtration degree of a term is blade_weight*|blade| + lie_weight*degX
///    (Clifford model: weights (1,2); trivially filtered: weights (0,0)).
struct FilteredModel {
  Space ssp;  // section space
  int l = 0, k = 0;
  bool fiber_model = false;
  int blade_weight = 1, lie_weight = 2;
  std::vector<int> q;
  std::vector<std::vector<int>> end_deg;
  int trunc = 8;  // y-degree truncation for synchronous computations

  static FilteredModel abstract_model(int l, int k, std::vector<int> frame_deg, int trunc = 8) {
    FilteredModel m;
    m.l = l;
    m.k = k;
    m.fiber_model = false;
    m.q = std::move(frame_deg);
    int r = int(m.q.size());
    m.end_deg.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m.end_deg[i][j] = std::max(m.q[i] - m.q[j], 0);
    m.trunc = trunc;
    m.ssp.chart_dim = l + k;
    m.ssp.vsplit = l;
    m.ssp.mat_dim = r;
    m.ssp.alg = Alg::Exterior;  // blades unused
    return m;
  }

  /// Clifford module model at a point (l = 0): fiber Cl(n) (x) Mat(r) with the
  /// equivariant filtration |blade| + 2 degX.
  static FilteredModel clifford_model(int n, int r, int lie_dim, int J, int trunc = 8) {
    FilteredModel m;
    m.l = 0;
    m.k = n;
    m.fiber_model = true;
    m.blade_weight = 1;
    m.lie_weight = 2;
    m.trunc = trunc;
    m.ssp.chart_dim = n;
    m.ssp.vsplit = 0;
    m.ssp.lie_dim = lie_dim;
    m.ssp.J = J;
    m.ssp.fiber_dim = n;
    m.ssp.mat_dim = r;
    m.ssp.alg = Alg::Clifford;
    return m;
  }

  /// Exterior-algebra fiber with the trivial filtration (all degrees zero).
  static FilteredModel trivially_filtered(int l, int k, int trunc = 8) {
    FilteredModel m;
    m.l = l;
    m.k = k;
    m.fiber_model = true;
    m.blade_weight = 0;
    m.lie_weight = 0;
    m.trunc = trunc;
    m.ssp.chart_dim = l + k;
    m.ssp.vsplit = l;
    m.ssp.fiber_dim = l + k;
    m.ssp.mat_dim = 1;
    m.ssp.alg = Alg::Exterior;
    return m;
  }

  int rank() const { return fiber_model ? (1 << ssp.fiber_dim) * ssp.mat_dim * ssp.mat_dim
                                        : int(q.size()); }

  /// Filtration degree of one section term.
  int filt_of_term(const TermKey& t) const {
    if (fiber_model) {
      int lie = 0;
      for (int i = ssp.chart_dim; i < ssp.chart_dim + ssp.lie_dim; ++i) lie += t.mono[i];
      return blade_weight * blade_deg(t.blade) + lie_weight * lie;
    }
    return q.at(t.row);
  }

  int max_filt() const {
    if (fiber_model) return blade_weight * ssp.fiber_dim + lie_weight * ssp.J;
    int m = 0;
    for (int v : q) m = std::max(m, v);
    return m;
  }

  /// End filtration degree of an endomorphism-valued element (max over terms).
  int end_deg_of(const GradedElem& phi) const {
    if (phi.is_zero()) return kNegInf;
    int d = kNegInf;
    for (const auto& [t, c] : phi.terms()) {
      if (fiber_model) {
        int lie = 0;
        for (int i = ssp.chart_dim; i < ssp.chart_dim + ssp.lie_dim; ++i) lie += t.mono[i];
        d = std::max(d, blade_weight * blade_deg(t.blade) + lie_weight * lie);
      } else {
        d = std::max(d, end_deg.at(t.row).at(t.col));
      }
    }
    return d;
  }

  /// Basis of End used by checkers and the brute-force order search.
  std::vector<GradedElem> end_basis() const {
    std::vector<GradedElem> b;
    Space esp = ssp;
    if (fiber_model) {
      for (uint32_t mask = 0; mask < (uint32_t(1) << ssp.fiber_dim); ++mask)
        for (int u = 0; u < ssp.mat_dim; ++u)
          for (int v = 0; v < ssp.mat_dim; ++v)
            b.push_back(GradedElem::term(esp, Scalar::one(), mask, u, v,
                                         Mono(esp.chart_dim + esp.lie_dim, 0)));
    } else {
      for (int i = 0; i < int(q.size()); ++i)
        for (int j = 0; j < int(q.size()); ++j) b.push_back(GradedElem::matrix_unit(esp, i, j));
    }
    return b;
  }
};

/// Filtration order o^f: restrict to {y = 0}; the max filtration degree among
/// surviving terms, or -inf when the restriction vanishes.
inline int filtration_order(const FilteredModel& m, const GradedElem& sec) {
  GradedElem r = sec.restrict_vertical_zero();
  if (r.is_zero()) return kNegInf;
  int d = kNegInf;
  for (const auto& [t, c] : r.terms()) d = std::max(d, m.filt_of_term(t));
  return d;
}

/// Connection nabla = d + A on the model bundle; A[c] is the End-valued
/// coefficient of the direction c.
struct ConnectionData {
  std::vector<GradedElem> A;

  static ConnectionData flat(const FilteredModel& m) {
    ConnectionData c;
    c.A.assign(m.l + m.k, GradedElem::zero(m.ssp));
    return c;
  }
};

inline GradedElem covariant_derivative(const FilteredModel& m, const ConnectionData& conn, int c,
                                       const GradedElem& sec) {
  (void)m;
  return sec.dchart(c) + conn.A.at(c) * sec;
}

/// Radial-gauge connection with prescribed constant curvature values:
/// A_{y_j} = 1/2 sum_i y^i Theta[i][j] with Theta antisymmetric End-valued
/// constants; horizontal components vanish.  Satisfies iota(R) A = 0.
inline ConnectionData radial_connection(const FilteredModel& m,
                                        const std::vector<std::vector<GradedElem>>& Theta) {
  ConnectionData c = ConnectionData::flat(m);
  for (int j = 0; j < m.k; ++j) {
    GradedElem a(m.ssp);
    for (int i = 0; i < m.k; ++i)
      a += GradedElem::chart_var(m.ssp, m.l + i) * Theta.at(i).at(j) * Rational(1, 2);
    c.A[m.l + j] = a;
  }
  return c;
}

struct ConnectionCheck {
  bool restricted_preserves = true;  // i^* nabla : F^j -> F^j
  bool curvature_order_two = true;   // K in End^2
  bool end_connection_order_zero = true;
  std::string witness;
  bool ok() const { return restricted_preserves && curvature_order_two && end_connection_order_zero; }
};

/// Verify the three compatibility conditions of a model connection.
inline ConnectionCheck check_connection(const FilteredModel& m, const ConnectionData& conn) {
  ConnectionCheck r;
  // (1) horizontal coefficients restricted to M must not raise the filtration
  for (int c = 0; c < m.l; ++c) {
    GradedElem B = conn.A[c].restrict_vertical_zero();
    if (B.is_zero()) continue;
    for (const auto& [t, v] : B.terms()) {
      int raise = m.fiber_model ? m.filt_of_term(t) : (m.q.at(t.row) - m.q.at(t.col));
      if (raise > 0) {
        r.restricted_preserves = false;
        r.witness = "restricted connection raises filtration in direction " + std::to_string(c);
      }
    }
  }
  // (2) curvature K = dA + A ^ A has End filtration order at most 2
  for (int c = 0; c < m.l + m.k; ++c)
    for (int b = c + 1; b < m.l + m.k; ++b) {
      GradedElem K = conn.A[b].dchart(c) - conn.A[c].dchart(b) + conn.A[c] * conn.A[b] -
                     conn.A[b] * conn.A[c];
      if (!K.is_zero() && m.end_deg_of(K) > 2) {
        r.curvature_order_two = false;
        r.witness = "curvature K(" + std::to_string(c) + "," + std::to_string(b) +
                    ") exceeds filtration order 2";
      }
    }
  // (3) the induced End connection ad(A) preserves the End filtration
  auto basis = m.end_basis();
  for (int c = 0; c < m.l + m.k && r.end_connection_order_zero; ++c) {
    if (conn.A[c].is_zero()) continue;
    for (const auto& e : basis) {
      GradedElem ad = conn.A[c] * e - e * conn.A[c];
      if (ad.is_zero()) continue;
      if (m.end_deg_of(ad) > m.end_deg_of(e)) {
        r.end_connection_order_zero = false;
        r.witness = "ad(A_" + std::to_string(c) + ") raises the End filtration";
        break;
      }
    }
  }
  return r;
}

}  // namespace eqindex::rescale
