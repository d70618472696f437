#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqindex/blade.hpp"
#include "eqindex/scalar.hpp"

namespace eqindex {

enum class Alg { Exterior, Clifford };

/// Ambient space of a graded element: polynomial chart variables (with a
/// horizontal/vertical split), Lie parameter variables truncated at degree J,
/// a blade factor (exterior or Clifford semantics) and a matrix factor.
struct Space {
  int chart_dim = 0;
  int vsplit = 0;  // chart vars [vsplit, chart_dim) are vertical ("y")
  int lie_dim = 0;
  int J = 0;  // Lie-degree truncation order
  int fiber_dim = 0;
  int mat_dim = 1;
  Alg alg = Alg::Exterior;

  bool operator==(const Space&) const = default;
};

using Mono = std::vector<uint8_t>;  // chart exponents then Lie exponents

/// One term: coefficient * x^mono_chart * X^mono_lie * blade * E_{row,col}.
struct TermKey {
  uint32_t blade = 0;
  int row = 0;
  int col = 0;
  Mono mono;

  auto operator<=>(const TermKey&) const = default;
};

/// Element of Poly(chart) (x) C[g]_(J) (x) Lambda/Cl(fiber) (x) Mat(r), over
/// the exact Scalar ring.  Immutable-style value type: every operation
/// returns a new element.  This single ring carries the chart forms, Clifford
/// module sections, Getzler symbols and Mehler kernel bodies of the library.
class GradedElem {
 public:
  GradedElem() = default;
  explicit GradedElem(const Space& sp) : sp_(sp) {}

  static GradedElem zero(const Space& sp) { return GradedElem(sp); }

  static GradedElem term(const Space& sp, const Scalar& c, uint32_t blade, int row, int col,
                         const Mono& mono) {
    GradedElem e(sp);
    e.add_term(blade, row, col, mono, c);
    return e;
  }
  /// Central (identity-matrix-valued) term: scalars embed as c * Id.
  static GradedElem central(const Space& sp, const Scalar& c, uint32_t blade, const Mono& mono) {
    GradedElem e(sp);
    for (int i = 0; i < sp.mat_dim; ++i) e.add_term(blade, i, i, mono, c);
    return e;
  }
  static GradedElem constant(const Space& sp, const Scalar& c) {
    return central(sp, c, 0, Mono(sp.chart_dim + sp.lie_dim, 0));
  }
  static GradedElem constant(const Space& sp, const Rational& q) {
    return constant(sp, Scalar::from_rational(q));
  }
  static GradedElem one(const Space& sp) { return constant(sp, Scalar::one()); }
  static GradedElem identity(const Space& sp) { return one(sp); }
  /// Chart variable as a degree-1 polynomial (times Id).
  static GradedElem chart_var(const Space& sp, int i) {
    Mono m(sp.chart_dim + sp.lie_dim, 0);
    m[i] = 1;
    return central(sp, Scalar::one(), 0, m);
  }
  /// Lie variable X_a (times Id).
  static GradedElem lie_var(const Space& sp, int a) {
    Mono m(sp.chart_dim + sp.lie_dim, 0);
    m[sp.chart_dim + a] = 1;
    return central(sp, Scalar::one(), 0, m);
  }
  /// Fiber generator e_i as a blade (times Id).
  static GradedElem gen(const Space& sp, int i) {
    return central(sp, Scalar::one(), uint32_t(1) << i, Mono(sp.chart_dim + sp.lie_dim, 0));
  }
  static GradedElem blade(const Space& sp, uint32_t mask) {
    return central(sp, Scalar::one(), mask, Mono(sp.chart_dim + sp.lie_dim, 0));
  }
  static GradedElem matrix_unit(const Space& sp, int r, int c) {
    return term(sp, Scalar::one(), 0, r, c, Mono(sp.chart_dim + sp.lie_dim, 0));
  }

  const Space& space() const { return sp_; }
  const std::map<TermKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const GradedElem& o) const { return sp_ == o.sp_ && terms_ == o.terms_; }
  bool operator!=(const GradedElem& o) const { return !(*this == o); }

  void add_term(uint32_t blade, int row, int col, const Mono& mono, const Scalar& c) {
    if (c.is_zero()) return;
    if (lie_degree_of(mono) > sp_.J) return;  // C[g]_(J) truncation
    TermKey k{blade, row, col, mono};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GradedElem operator-() const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_) e.terms_.emplace(k, -v);
    return e;
  }
  GradedElem& operator+=(const GradedElem& o) {
    check_space(o);
    for (const auto& [k, v] : o.terms_) add_term(k.blade, k.row, k.col, k.mono, v);
    return *this;
  }
  GradedElem& operator-=(const GradedElem& o) { return *this += (-o); }
  friend GradedElem operator+(GradedElem a, const GradedElem& b) { return a += b; }
  friend GradedElem operator-(GradedElem a, const GradedElem& b) { return a -= b; }

  friend GradedElem operator*(const GradedElem& a, const Scalar& s) {
    GradedElem e(a.sp_);
    if (s.is_zero()) return e;
    for (const auto& [k, v] : a.terms_) e.terms_.emplace(k, v * s);
    return e;
  }
  friend GradedElem operator*(const Scalar& s, const GradedElem& a) { return a * s; }
  friend GradedElem operator*(const GradedElem& a, const Rational& q) {
    return a * Scalar::from_rational(q);
  }
  friend GradedElem operator*(const Rational& q, const GradedElem& a) {
    return a * Scalar::from_rational(q);
  }

  /// Ring product.  Blades multiply per the algebra tag, matrix slots
  /// compose, monomials add (dropping Lie degree beyond J).  A mat_dim == 1
  /// factor acts as a scalar multiple of the identity when the other factor
  /// is matrix valued.
  friend GradedElem operator*(const GradedElem& a, const GradedElem& b) {
    if (!compatible_for_mul(a.sp_, b.sp_)) throw std::invalid_argument("GradedElem: space mismatch");
    const Space& sp = a.sp_.mat_dim >= b.sp_.mat_dim ? a.sp_ : b.sp_;
    GradedElem r(sp);
    const bool a_scalar_mat = a.sp_.mat_dim == 1 && sp.mat_dim > 1;
    const bool b_scalar_mat = b.sp_.mat_dim == 1 && sp.mat_dim > 1;
    Mono mono(sp.chart_dim + sp.lie_dim);
    for (const auto& [ka, va] : a.terms_) {
      for (const auto& [kb, vb] : b.terms_) {
        BladeProd bp = sp.alg == Alg::Exterior ? wedge_blades(ka.blade, kb.blade)
                                               : clifford_blades(ka.blade, kb.blade);
        if (bp.sign == 0) continue;
        int row, col;
        if (a_scalar_mat) {
          row = kb.row;
          col = kb.col;
        } else if (b_scalar_mat) {
          row = ka.row;
          col = ka.col;
        } else {
          if (ka.col != kb.row) continue;
          row = ka.row;
          col = kb.col;
        }
        for (size_t i = 0; i < mono.size(); ++i) mono[i] = uint8_t(ka.mono[i] + kb.mono[i]);
        Scalar c = va * vb;
        if (bp.sign < 0) c = -c;
        r.add_term(bp.mask, row, col, mono, c);
      }
    }
    return r;
  }
  GradedElem& operator*=(const GradedElem& o) { return *this = *this * o; }

  /// Retag blades: exterior <-> Clifford (identity on basis blades).
  GradedElem with_alg(Alg alg) const {
    GradedElem e(sp_);
    e.sp_.alg = alg;
    e.terms_ = terms_;
    return e;
  }

  /// d/d(chart var i).
  GradedElem dchart(int i) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_) {
      if (k.mono[i] == 0) continue;
      Mono m = k.mono;
      int ex = m[i]--;
      e.add_term(k.blade, k.row, k.col, m, v * Rational(ex));
    }
    return e;
  }

  /// Substitute a rational value for chart variable i.
  GradedElem subst_chart(int i, const Rational& val) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_) {
      Mono m = k.mono;
      int ex = m[i];
      m[i] = 0;
      Rational p = 1;
      for (int t = 0; t < ex; ++t) p *= val;
      e.add_term(k.blade, k.row, k.col, m, v * p);
    }
    return e;
  }

  /// Restriction to {vertical vars = 0}.
  GradedElem restrict_vertical_zero() const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_) {
      bool keep = true;
      for (int i = sp_.vsplit; i < sp_.chart_dim; ++i)
        if (k.mono[i]) {
          keep = false;
          break;
        }
      if (keep) e.add_term(k.blade, k.row, k.col, k.mono, v);
    }
    return e;
  }

  /// Drop terms of chart degree > N.
  GradedElem truncate_chart_deg(int N) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (chart_degree_of(k.mono) <= N) e.add_term(k.blade, k.row, k.col, k.mono, v);
    return e;
  }

  /// Matrix trace; result has mat_dim 1.
  GradedElem mat_trace() const {
    Space sp = sp_;
    sp.mat_dim = 1;
    GradedElem e(sp);
    for (const auto& [k, v] : terms_)
      if (k.row == k.col) e.add_term(k.blade, 0, 0, k.mono, v);
    return e;
  }

  /// Coefficient of a given blade (keeps matrix and polynomial slots).
  GradedElem blade_coeff(uint32_t mask) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (k.blade == mask) e.add_term(0, k.row, k.col, k.mono, v);
    return e;
  }

  /// Keep terms with blade_deg + 2*lie_degree == p (the equivariant grade).
  GradedElem grade_part(int p) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (blade_deg(k.blade) + 2 * lie_degree_of(k.mono) == p)
        e.add_term(k.blade, k.row, k.col, k.mono, v);
    return e;
  }

  /// Keep terms of vertical (y) degree m.
  GradedElem vertical_deg_part(int m) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (vertical_degree_of(k.mono) == m) e.add_term(k.blade, k.row, k.col, k.mono, v);
    return e;
  }

  /// Drop terms of vertical degree > N.
  GradedElem truncate_vertical_deg(int N) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (vertical_degree_of(k.mono) <= N) e.add_term(k.blade, k.row, k.col, k.mono, v);
    return e;
  }

  /// Keep terms of blade degree d.
  GradedElem blade_deg_part(int d) const {
    GradedElem e(sp_);
    for (const auto& [k, v] : terms_)
      if (blade_deg(k.blade) == d) e.add_term(k.blade, k.row, k.col, k.mono, v);
    return e;
  }

  int chart_degree_of(const Mono& m) const {
    int d = 0;
    for (int i = 0; i < sp_.chart_dim; ++i) d += m[i];
    return d;
  }
  int vertical_degree_of(const Mono& m) const {
    int d = 0;
    for (int i = sp_.vsplit; i < sp_.chart_dim; ++i) d += m[i];
    return d;
  }
  int lie_degree_of(const Mono& m) const {
    int d = 0;
    for (int i = sp_.chart_dim; i < sp_.chart_dim + sp_.lie_dim; ++i) d += m[i];
    return d;
  }

  int max_chart_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, chart_degree_of(k.mono));
    return d;
  }
  int min_vertical_degree() const {  // vanishing order along {y=0}; -1 if zero elem
    if (terms_.empty()) return -1;
    int d = INT32_MAX;
    for (const auto& [k, v] : terms_) d = std::min(d, vertical_degree_of(k.mono));
    return d;
  }
  int max_lie_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, lie_degree_of(k.mono));
    return d;
  }
  int max_blade_deg() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, blade_deg(k.blade));
    return d;
  }

  /// The unique coefficient when the element is a pure scalar constant.
  Scalar scalar_value() const {
    if (terms_.empty()) return Scalar::zero();
    if (terms_.size() != 1) throw std::domain_error("GradedElem: not a scalar constant");
    const auto& [k, v] = *terms_.begin();
    if (k.blade != 0 || k.row != 0 || k.col != 0) throw std::domain_error("GradedElem: not scalar");
    for (auto e : k.mono)
      if (e) throw std::domain_error("GradedElem: not constant");
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
      if (!first) os << "  +  ";
      first = false;
      os << "(" << v.str() << ")";
      for (int i = 0; i < sp_.chart_dim; ++i)
        if (k.mono[i]) os << "*z" << i << "^" << int(k.mono[i]);
      for (int a = 0; a < sp_.lie_dim; ++a)
        if (k.mono[sp_.chart_dim + a]) os << "*X" << a << "^" << int(k.mono[sp_.chart_dim + a]);
      if (k.blade) {
        os << "*e{";
        for (int i = 0; i < 32; ++i)
          if (k.blade & (uint32_t(1) << i)) os << i << ",";
        os << "}";
      }
      if (sp_.mat_dim > 1) os << "*E(" << k.row << "," << k.col << ")";
    }
    return os.str();
  }

 private:
  void check_space(const GradedElem& o) const {
    if (!(sp_ == o.sp_)) throw std::invalid_argument("GradedElem: space mismatch");
  }
  static bool compatible_for_mul(const Space& a, const Space& b) {
    return a.chart_dim == b.chart_dim && a.vsplit == b.vsplit && a.lie_dim == b.lie_dim &&
           a.J == b.J && a.fiber_dim == b.fiber_dim && a.alg == b.alg &&
           (a.mat_dim == b.mat_dim || a.mat_dim == 1 || b.mat_dim == 1);
  }

  Space sp_;
  std::map<TermKey, Scalar> terms_;
};

/// Reinterpret an element in another space with the same blade/matrix/chart
/// shape (e.g. chart two-forms as fiber bivectors).  Masks and monomials are
/// copied verbatim.
inline GradedElem reinterpret_blades(const GradedElem& a, const Space& to) {
  if (to.chart_dim != a.space().chart_dim || to.lie_dim != a.space().lie_dim ||
      to.J != a.space().J || to.mat_dim != a.space().mat_dim)
    throw std::invalid_argument("reinterpret_blades: incompatible spaces");
  GradedElem r(to);
  for (const auto& [k, v] : a.terms()) r.add_term(k.blade, k.row, k.col, k.mono, v);
  return r;
}

/// Scalar (0,0)-entry of a central matrix-valued element, in a mat_dim-1 space.
inline GradedElem central_part(const GradedElem& a, const Space& to) {
  GradedElem r(to);
  for (const auto& [k, v] : a.terms())
    if (k.row == 0 && k.col == 0) r.add_term(k.blade, 0, 0, k.mono, v);
  return r;
}

/// Move a chart-independent element into a space without chart variables
/// (keeps blade, matrix and Lie slots).
inline GradedElem drop_chart(const GradedElem& a, const Space& to) {
  GradedElem r(to);
  for (const auto& [k, v] : a.terms()) {
    for (int i = 0; i < a.space().chart_dim; ++i)
      if (k.mono[i]) throw std::domain_error("drop_chart: element depends on chart variables");
    Mono m(to.chart_dim + to.lie_dim, 0);
    for (int x = 0; x < a.space().lie_dim && x < to.lie_dim; ++x)
      m[to.chart_dim + x] = k.mono[a.space().chart_dim + x];
    r.add_term(k.blade, k.row, k.col, m, v);
  }
  return r;
}

/// exp of a nilpotent element (throws if powers fail to vanish).
inline GradedElem exp_nilpotent(const GradedElem& a, int hard_cap = 64) {
  GradedElem sum = GradedElem::identity(a.space());
  GradedElem pw = GradedElem::identity(a.space());
  Rational fact = 1;
  for (int k = 1; k <= hard_cap; ++k) {
    pw = pw * a;
    if (pw.is_zero()) return sum;
    fact *= k;
    sum += pw * Scalar::from_rational(Rational(1) / fact);
  }
  throw std::domain_error("exp_nilpotent: element is not nilpotent");
}

}  // namespace eqindex
