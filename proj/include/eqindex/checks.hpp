#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqindex/chart_dirac.hpp"
#include "eqindex/dnc.hpp"
#include "eqindex/gaussian.hpp"
#include "eqindex/randgen.hpp"
#include "eqindex/sphere.hpp"

namespace eqindex::harness {

using nlohmann::json;

/// Run configuration: suite selection, truncation orders, bounds, seed,
/// quadrature parameters and output path.  A fixed seed makes the whole run
/// deterministic (timing fields aside).
struct RunConfig {
  std::string suite = "all";
  uint64_t seed = 1;
  int ydeg_bound = 8;
  int J = 2;
  int op_bound = 6;
  double tolerance = 1e-6;
  int k = 2;
  double s = 0.3;
  bool k_s_explicit = false;  // kirillov-only single-record mode
  kirillov::QuadratureConfig quad;
  std::string out_path;
  std::string sweep_path;

  void validate() const {
    if (ydeg_bound <= 0 || J < 0 || op_bound < 0)
      throw std::invalid_argument("config: bounds must be positive");
    quad.validate();
  }
};

struct CheckResult {
  std::string status = "pass";  // pass | fail | inconclusive
  json witness;                 // counterexample payload on fail
  double ms = 0;
};

struct Check {
  std::string id;
  std::string anchor;  // stable tag of the mathematical statement being verified
  std::string suite;
  std::function<CheckResult(const RunConfig&)> fn;
};

inline CheckResult pass() { return {}; }
inline CheckResult fail(json witness) { return {"fail", std::move(witness), 0}; }
inline CheckResult inconclusive(json witness) { return {"inconclusive", std::move(witness), 0}; }

// ---------------------------------------------------------------------------
// algebra suite
// ---------------------------------------------------------------------------

inline CheckResult check_clifford_relation(const RunConfig& cfg) {
  randgen::Rng rng(cfg.seed ^ 0xa1);
  for (int n = 2; n <= 6; ++n) {
    auto sp = gradealg::clifford_space(n);
    for (int it = 0; it < 20; ++it) {
      GradedElem v(sp), w(sp);
      Rational dot = 0;
      for (int i = 0; i < n; ++i) {
        Rational vi = randgen::rrat(rng), wi = randgen::rrat(rng);
        v += GradedElem::gen(sp, i) * vi;
        w += GradedElem::gen(sp, i) * wi;
        dot += vi * wi;
      }
      auto anti = v * w + w * v;
      if (anti != GradedElem::one(sp) * Scalar::from_rational(-2 * dot))
        return fail({{"n", n}, {"v", v.str()}, {"w", w.str()}});
    }
  }
  return pass();
}

inline CheckResult check_quantize_roundtrip(const RunConfig& cfg) {
  randgen::Rng rng(cfg.seed ^ 0xa2);
  for (int n = 1; n <= 6; ++n) {
    auto sp = gradealg::exterior_space(n);
    for (int it = 0; it < 17; ++it) {
      GradedElem m(sp);
      for (int t = 0; t < 5; ++t)
        m += GradedElem::blade(sp, uint32_t(rng() % (1u << n))) * randgen::rrat(rng);
      if (gradealg::symbol_map(gradealg::quantize(m)) != m) return fail({{"n", n}, {"m", m.str()}});
    }
  }
  return pass();
}

inline CheckResult check_berezin(const RunConfig&) {
  using namespace gradealg;
  if (!berezin_str(GradedElem::identity(clifford_space(2, 2))).is_zero())
    return fail({{"case", "identity n=2"}});
  if (berezin_str_scalar(basis(clifford_space(2), 0b11)) != Scalar::monomial(2, 3, 0))
    return fail({{"case", "e01 n=2"}});
  if (berezin_str_scalar(basis(clifford_space(4), 0b1111)) != Scalar::from_rational(-4))
    return fail({{"case", "top n=4"}});
  try {
    berezin_str(basis(clifford_space(3), 0b111));
    return fail({{"case", "odd n accepted"}});
  } catch (const std::invalid_argument&) {
  }
  return pass();
}

inline CheckResult check_supertrace_symmetry(const RunConfig&) {
  using namespace gradealg;
  for (int n : {2, 4}) {
    auto sp = clifford_space(n);
    for (uint32_t a = 0; a < (uint32_t(1) << n); ++a)
      for (uint32_t b = 0; b < (uint32_t(1) << n); ++b) {
        auto ab = berezin_str_scalar(basis(sp, a) * basis(sp, b));
        auto ba = berezin_str_scalar(basis(sp, b) * basis(sp, a));
        int sgn = (blade_deg(a) * blade_deg(b)) % 2 ? -1 : 1;
        if (ab != (sgn < 0 ? -ba : ba)) return fail({{"n", n}, {"a", a}, {"b", b}});
      }
  }
  return pass();
}

inline CheckResult check_filtration_subadditive(const RunConfig& cfg) {
  randgen::Rng rng(cfg.seed ^ 0xa3);
  auto sp = gradealg::clifford_space(5);
  for (int it = 0; it < 100; ++it) {
    uint32_t a = uint32_t(rng() % 32), b = uint32_t(rng() % 32);
    auto p = GradedElem::blade(sp, a) * GradedElem::blade(sp, b);
    if (p.max_blade_deg() > blade_deg(a) + blade_deg(b)) return fail({{"a", a}, {"b", b}});
  }
  return pass();
}

// ---------------------------------------------------------------------------
// forms suite
// ---------------------------------------------------------------------------

inline eqforms::VectorFieldPoly rotation_action(const Space& sp) {
  using namespace eqforms;
  return {{-(x(sp, 1) * X(sp, 0)), x(sp, 0) * X(sp, 0)}};
}

inline GradedElem random_form(randgen::Rng& rng, const Space& sp, int nterms = 6) {
  GradedElem f(sp);
  for (int t = 0; t < nterms; ++t) {
    Mono m(sp.chart_dim + sp.lie_dim, 0);
    for (int i = 0; i < sp.chart_dim; ++i) m[i] = uint8_t(rng() % 3);
    for (int a = 0; a < sp.lie_dim; ++a) m[sp.chart_dim + a] = uint8_t(rng() % 2);
    f.add_term(uint32_t(rng() % (1u << sp.fiber_dim)), 0, 0, m,
               Scalar::from_rational(randgen::rrat(rng)));
  }
  return f;
}

inline CheckResult check_cartan_identities(const RunConfig& cfg) {
  using namespace eqforms;
  randgen::Rng rng(cfg.seed ^ 0xb1);
  auto sp = form_space(3, 1, cfg.J);
  VectorFieldPoly v{{x(sp, 1) * x(sp, 2), -x(sp, 0), x(sp, 0) * x(sp, 1)}};
  for (int it = 0; it < 30; ++it) {
    auto a = random_form(rng, sp);
    if (!d(d(a)).is_zero()) return fail({{"law", "d^2"}, {"form", a.str()}});
    if (!iota(v, iota(v, a)).is_zero()) return fail({{"law", "iota^2"}, {"form", a.str()}});
    if (lie(v, a) != d(iota(v, a)) + iota(v, d(a))) return fail({{"law", "cartan"}});
  }
  return pass();
}

inline CheckResult check_dg_squared(const RunConfig& cfg) {
  using namespace eqforms;
  randgen::Rng rng(cfg.seed ^ 0xb2);
  auto sp = form_space(2, 1, 2);
  auto act = rotation_action(sp);
  for (int it = 0; it < 50; ++it) {
    auto a = random_form(rng, sp);
    if (d_g(d_g(a, act), act) != -lie(act, a)) return fail({{"form", a.str()}});
  }
  return pass();
}

inline CheckResult check_moment_kosmann(const RunConfig&) {
  using namespace eqforms;
  const int n = 2;
  Space scl;
  scl.chart_dim = n;
  scl.vsplit = n;
  scl.lie_dim = 1;
  scl.J = 2;
  scl.fiber_dim = n;
  scl.alg = Alg::Clifford;
  std::vector<std::vector<Rational>> C{{0, -1}, {1, 0}};
  GradedElem tau(scl);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (C[i][j] != 0)
        tau += GradedElem::gen(scl, i) * GradedElem::gen(scl, j) * GradedElem::lie_var(scl, 0) *
               (C[i][j] / 4);
  for (int k = 0; k < n; ++k) {
    GradedElem ck = GradedElem::gen(scl, k);
    GradedElem want(scl);
    for (int i = 0; i < n; ++i)
      if (C[i][k] != 0) want += GradedElem::gen(scl, i) * GradedElem::lie_var(scl, 0) * (-C[i][k]);
    if (tau * ck - ck * tau != want) return fail({{"case", "spin generator"}});
  }
  auto spf = form_space(n, 1, 2);
  GradedElem theta = (x(spf, 0) * dx(spf, 1) - x(spf, 1) * dx(spf, 0)) * X(spf, 0);
  if (tau != reinterpret_blades(d(theta), scl) * Rational(-1, 4))
    return fail({{"case", "Kosmann"}});
  return pass();
}

inline CheckResult check_ahat_oracle(const RunConfig&) {
  using namespace eqforms;
  auto sp = form_space(4, 1, 2);
  EqForm r = dx(sp, 0) * dx(sp, 1) + dx(sp, 2) * dx(sp, 3) + X(sp, 0) * Rational(2);
  ElemMat m = ElemMat::zero(2, sp);
  m(0, 1) = r;
  m(1, 0) = -r;
  if (ahat(m) != sin_half_ratio(10).inverse().eval_nilpotent(r)) return fail({{"case", "series"}});
  return pass();
}

inline CheckResult check_ahat_blocks(const RunConfig&) {
  using namespace eqforms;
  auto sp = form_space(4, 1, 2);
  EqForm r = dx(sp, 0) * dx(sp, 1) + X(sp, 0);
  EqForm s = dx(sp, 2) * dx(sp, 3) - X(sp, 0) * Rational(2);
  ElemMat m = ElemMat::zero(4, sp);
  m(0, 1) = r;
  m(1, 0) = -r;
  m(2, 3) = s;
  m(3, 2) = -s;
  ElemMat br = ElemMat::zero(2, sp);
  br(0, 1) = r;
  br(1, 0) = -r;
  ElemMat bs = ElemMat::zero(2, sp);
  bs(0, 1) = s;
  bs(1, 0) = -s;
  if (ahat(m) != ahat(br) * ahat(bs)) return fail({{"case", "blocks"}});
  return pass();
}

inline CheckResult check_ch_additive(const RunConfig&) {
  using namespace eqforms;
  auto sp2 = form_space(4, 1, 2, 2);
  EqForm u = dx(sp2, 0) * dx(sp2, 1) + X(sp2, 0);
  EqForm v = dx(sp2, 2) * dx(sp2, 3) * Rational(2);
  EqForm F = EqForm::matrix_unit(sp2, 0, 0) * u + EqForm::matrix_unit(sp2, 1, 1) * v;
  auto sp1 = form_space(4, 1, 2, 1);
  EqForm u1 = dx(sp1, 0) * dx(sp1, 1) + X(sp1, 0);
  EqForm v1 = dx(sp1, 2) * dx(sp1, 3) * Rational(2);
  if (ch_rel(F) != ch_rel(u1) + ch_rel(v1)) return fail({{"case", "block additivity"}});
  return pass();
}

inline CheckResult check_equivariantly_closed(const RunConfig&) {
  using namespace eqforms;
  auto sp = form_space(2, 1, 2);
  EqForm rho2 = x(sp, 0) * x(sp, 0) + x(sp, 1) * x(sp, 1);
  EqForm a0 = (EqForm::one(sp) + rho2) * (x(sp, 0) * dx(sp, 1) - x(sp, 1) * dx(sp, 0));
  VectorFieldPoly act = rotation_action(sp);
  EqForm Fg = d(a0) - iota(act, a0);
  if (!d_g(Fg, act).is_zero()) return fail({{"case", "curvature"}});
  ElemMat m = ElemMat::zero(2, sp);
  m(0, 1) = Fg;
  m(1, 0) = -Fg;
  if (!d_g(ahat(m), act).is_zero()) return fail({{"case", "ahat"}});
  if (!d_g(ch_rel(Fg), act).is_zero()) return fail({{"case", "ch"}});
  return pass();
}

// ---------------------------------------------------------------------------
// dnc suite
// ---------------------------------------------------------------------------

inline dnc::LaurentFn random_member_fn(randgen::Rng& rng, const Space& sp) {
  dnc::LaurentFn f(sp);
  for (int t = 0; t < 5; ++t) {
    int p = int(rng() % 5) - 2;
    Mono m(sp.chart_dim + sp.lie_dim, 0);
    int ydeg = 0;
    for (int i = 0; i < sp.chart_dim; ++i) {
      m[i] = uint8_t(rng() % 3);
      if (i >= sp.vsplit) ydeg += m[i];
    }
    if (p > ydeg) p = ydeg;
    f.add(p, GradedElem::term(sp, Scalar::from_rational(randgen::rrat(rng)), 0, 0, 0, m));
  }
  return f;
}

inline CheckResult check_dnc_membership(const RunConfig&) {
  using namespace dnc;
  auto sp = chart_space(1, 2);
  auto mono = [&](std::vector<int> e) {
    Mono m(sp.chart_dim, 0);
    for (size_t i = 0; i < e.size(); ++i) m[i] = uint8_t(e[i]);
    return GradedElem::term(sp, Scalar::one(), 0, 0, 0, m);
  };
  LaurentFn f1(sp), f2(sp), f3(sp);
  f1.add(1, mono({0, 1, 0}));
  f2.add(1, mono({1, 0, 0}));
  f3.add(2, mono({0, 1, 1}) + mono({0, 3, 0}));
  if (!membership(f1) || membership(f2) || !membership(f3)) return fail({{"case", "examples"}});
  return pass();
}

inline CheckResult check_dnc_homomorphism(const RunConfig& cfg) {
  using namespace dnc;
  randgen::Rng rng(cfg.seed ^ 0xc1);
  auto sp = chart_space(2, 2);
  for (int it = 0; it < 100; ++it) {
    auto a = random_member_fn(rng, sp), b = random_member_fn(rng, sp);
    std::vector<Rational> v{randgen::rrat(rng), randgen::rrat(rng), randgen::rrat(rng),
                            randgen::rrat(rng)};
    Rational lam(1 + int(rng() % 5), 1 + int(rng() % 3));
    if (eval_generic(a * b, v, lam) != eval_generic(a, v, lam) * eval_generic(b, v, lam))
      return fail({{"case", "generic"}, {"it", it}});
    std::vector<Rational> m{v[0], v[1]}, X{v[2], v[3]};
    if (eval_zero(a * b, m, X) != eval_zero(a, m, X) * eval_zero(b, m, X))
      return fail({{"case", "zero"}, {"it", it}});
  }
  return pass();
}

inline CheckResult check_dnc_exp_factorization(const RunConfig&) {
  using namespace dnc;
  auto sp = chart_space(1, 2);
  for (int a1 = 0; a1 <= 3; ++a1)
    for (int a2 = 0; a1 + a2 <= 5; ++a2)
      for (int b = 0; b <= 2; ++b)
        for (int p = -2; p <= a1 + a2; ++p) {
          Mono m(sp.chart_dim, 0);
          m[0] = uint8_t(b);
          m[1] = uint8_t(a1);
          m[2] = uint8_t(a2);
          LaurentFn f(sp);
          f.add(p, GradedElem::term(sp, Scalar::one(), 0, 0, 0, m));
          std::vector<Rational> base{Rational(3, 2)}, X{Rational(2), Rational(-1, 2)};
          if (eval_zero(f, base, X) != eval_zero_via_exp(f, base, X))
            return fail({{"alpha", {a1, a2}}, {"beta", b}, {"p", p}});
        }
  return pass();
}

inline CheckResult check_dnc_euler_like(const RunConfig&) {
  using namespace dnc;
  auto sp = chart_space(0, 2);
  auto mono = [&](std::vector<int> e) {
    Mono m(sp.chart_dim, 0);
    for (size_t i = 0; i < e.size(); ++i) m[i] = uint8_t(e[i]);
    return GradedElem::term(sp, Scalar::one(), 0, 0, 0, m);
  };
  std::vector<GradedElem> euler{GradedElem::chart_var(sp, 0), GradedElem::chart_var(sp, 1)};
  if (!euler_like_check(euler, mono({1, 1}), 2)) return fail({{"case", "exact"}});
  auto pert = euler;
  pert[0] += mono({2, 0});
  if (!euler_like_check(pert, mono({1, 0}), 1)) return fail({{"case", "perturbed"}});
  std::vector<GradedElem> trans{GradedElem::one(sp), GradedElem::zero(sp)};
  if (euler_like_check(trans, mono({1, 0}), 1)) return fail({{"case", "translation accepted"}});
  return pass();
}

inline CheckResult check_dnc_continuity(const RunConfig&) {
  using namespace dnc;
  auto sp = chart_space(1, 1);
  for (int a = 0; a <= 4; ++a)
    for (int p = 0; p <= a; ++p) {
      Mono m(sp.chart_dim, 0);
      m[0] = 1;
      m[1] = uint8_t(a);
      LaurentFn f(sp);
      f.add(p, GradedElem::term(sp, Scalar::one(), 0, 0, 0, m));
      std::vector<Rational> base{Rational(1, 3)}, X{Rational(5, 4)};
      Scalar limit = eval_zero(f, base, X);
      Rational lam(1, 4096);  // 2^-12
      std::vector<Rational> v{base[0], lam * X[0]};
      Scalar diff = eval_generic(f, v, lam) - limit;
      if (a == p && !diff.is_zero()) return fail({{"a", a}, {"p", p}});
      if (a > p) {
        Rational mag = diff.rational_value();
        if (mag < 0) mag = -mag;
        if (mag >= Rational(1, BigInt(1) << (6 * (a - p)))) return fail({{"a", a}, {"p", p}});
      }
    }
  return pass();
}

// ---------------------------------------------------------------------------
// rescale suite
// ---------------------------------------------------------------------------

inline CheckResult check_scaling_equals_taylor(const RunConfig& cfg) {
  using namespace rescale;
  randgen::Rng rng(cfg.seed ^ 0xd1);
  int checked = 0, inconclusive_count = 0;
  while (checked < 200) {
    auto m = randgen::rmodel(rng, 2, 2, 3, 2, cfg.ydeg_bound);
    auto conn = randgen::rconnection(rng, m);
    if (!check_connection(m, conn).ok()) return fail({{"case", "generated connection invalid"}});
    auto sec = randgen::rsection(rng, m, 4);
    if (sec.is_zero()) continue;
    auto ot = taylor_order(m, conn, sec);
    auto osc = scaling_order_bruteforce(m, conn, sec, cfg.op_bound);
    if (!ot.stable || !osc.conclusive) {
      if (++inconclusive_count > 400)
        return inconclusive({{"reason", "op_bound or truncation too small"},
                             {"op_bound", cfg.op_bound}});
      continue;
    }
    if (osc.value != ot.value)
      return fail({{"taylor", ot.value}, {"scaling", osc.value}, {"section", sec.str()}});
    ++checked;
  }
  return pass();
}

inline CheckResult check_order_monotonicity(const RunConfig& cfg) {
  using namespace rescale;
  randgen::Rng rng(cfg.seed ^ 0xd2);
  int checked = 0;
  while (checked < 200) {
    auto m = randgen::rmodel(rng);
    auto conn = randgen::rconnection(rng, m);
    auto sec = randgen::rsection(rng, m);
    if (sec.is_zero()) continue;
    auto D1 = randgen::rdiffop(rng, m);
    auto D2 = randgen::rdiffop(rng, m);
    auto Ds = apply_diffop(m, conn, D1, sec);
    auto o_sec = taylor_order(m, conn, sec);
    auto o_Ds = taylor_order(m, conn, Ds);
    if (!o_sec.stable || !o_Ds.stable) continue;
    if (o_Ds.value != kPosInf && o_Ds.value < o_sec.value - getzler_bound(m, D1))
      return fail({{"case", "o^sc monotonicity"},
                   {"o_D_sigma", o_Ds.value},
                   {"o_sigma", o_sec.value},
                   {"o_D", getzler_bound(m, D1)}});
    auto D12 = compose_normal_form(m, conn, D1, D2);
    if (!D12.terms.empty() &&
        getzler_bound(m, D12) > getzler_bound(m, D1) + getzler_bound(m, D2))
      return fail({{"case", "o^g subadditivity"}});
    ++checked;
  }
  return pass();
}

inline CheckResult check_frame_rank(const RunConfig& cfg) {
  using namespace rescale;
  randgen::Rng rng(cfg.seed ^ 0xd3);
  auto m = FilteredModel::abstract_model(0, 2, {0, 1});
  auto conn = ConnectionData::flat(m);
  LaurentSection f0, f1;
  f0.add(0, GradedElem::term(m.ssp, Scalar::one(), 0, 0, 0, Mono(m.ssp.chart_dim, 0)));
  f1.add(-1, GradedElem::term(m.ssp, Scalar::one(), 0, 1, 0, Mono(m.ssp.chart_dim, 0)));
  std::vector<SamplePoint> pts;
  for (int i = 0; i < 20; ++i) {
    SamplePoint p;
    if (i % 2 == 0) {
      p.zero_fiber = true;
      p.eta = {randgen::rrat(rng), randgen::rrat(rng)};
    } else {
      p.zero_fiber = false;
      p.base_x = {randgen::rrat(rng), randgen::rrat(rng)};
      p.lambda = Rational(1 + int(rng() % 5), 1 + int(rng() % 3));
    }
    pts.push_back(p);
  }
  if (!frame_rank_test(m, conn, {f0, f1}, pts)) return fail({{"case", "good frame rejected"}});
  if (frame_rank_test(m, conn, {f1, f1}, pts)) return fail({{"case", "degenerate accepted"}});
  LaurentSection bad;
  bad.add(-1, GradedElem::term(m.ssp, Scalar::one(), 0, 0, 0, Mono(m.ssp.chart_dim, 0)));
  SamplePoint zf;
  zf.zero_fiber = true;
  zf.eta = {0, 0};
  if (frame_rank_test(m, conn, {bad, f1}, {zf})) return fail({{"case", "wrong powers accepted"}});
  return pass();
}

inline CheckResult check_str_t(const RunConfig& cfg) {
  using namespace rescale;
  randgen::Rng rng(cfg.seed ^ 0xd4);
  int done = 0;
  while (done < 50) {
    int J = int(rng() % 2);
    int n = (done % 5 == 4) ? 4 : 2;  // mostly n=2, some n=4
    auto m = FilteredModel::clifford_model(n, 1 + int(rng() % 2), J, J);
    auto conn = ConnectionData::flat(m);
    LaurentSection s;
    for (int t = 0; t < 3; ++t) {
      auto sec = randgen::rsection_fiber(rng, m, 2, 3, J);
      if (sec.is_zero()) continue;
      auto ord = taylor_order(m, conn, sec);
      if (ord.value == kPosInf) continue;
      s.add(ord.value, sec);
    }
    if (s.terms.empty()) continue;
    if (!section_membership(m, conn, s).member) continue;
    auto st = str_t(m, conn, s, {});
    if (!st.no_negative_powers)
      return fail({{"case", "negative t powers"}, {"n", n}});
    if (st.value_at_zero != st.zero_fiber_value)
      return fail({{"case", "zero-fiber mismatch"},
                   {"t0", st.value_at_zero.str()},
                   {"berezin", st.zero_fiber_value.str()}});
    ++done;
  }
  return pass();
}

inline CheckResult check_witten(const RunConfig&) {
  using namespace rescale;
  auto m = FilteredModel::trivially_filtered(1, 2);
  auto conn = ConnectionData::flat(m);
  std::vector<GradedElem> df{GradedElem::zero(m.ssp),
                             GradedElem::chart_var(m.ssp, 1) * Rational(2),
                             GradedElem::zero(m.ssp)};
  for (uint32_t b = 0; b < 8; ++b) {
    LaurentSection s;
    s.add(0, GradedElem::blade(m.ssp, b));
    if (!witten_membership(m, conn, df, s).member)
      return fail({{"case", "Morse-Bott rejected"}, {"blade", b}});
  }
  std::vector<GradedElem> bad{GradedElem::zero(m.ssp), GradedElem::one(m.ssp),
                              GradedElem::zero(m.ssp)};
  LaurentSection gen;
  gen.add(0, GradedElem::one(m.ssp));
  auto res = witten_membership(m, conn, bad, gen);
  if (res.member || res.witness.empty())
    return fail({{"case", "non-Morse-Bott accepted or no witness"}});
  // Novikov: closed one-form vanishing on M
  std::vector<GradedElem> omega{GradedElem::zero(m.ssp),
                                GradedElem::chart_var(m.ssp, 1) * Rational(2),
                                GradedElem::zero(m.ssp)};
  LaurentSection rich;
  rich.add(0, GradedElem::blade(m.ssp, 0b110));
  rich.add(1, GradedElem::blade(m.ssp, 0b010) * GradedElem::chart_var(m.ssp, 2));
  if (!witten_membership(m, conn, omega, rich).member) return fail({{"case", "Novikov rejected"}});
  return pass();
}

// ---------------------------------------------------------------------------
// symbols suite
// ---------------------------------------------------------------------------

inline CheckResult check_generator_symbols(const RunConfig& cfg) {
  using namespace symbols;
  using rescale::LaurentSection;
  randgen::Rng rng(cfg.seed ^ 0xe1);
  int done = 0;
  while (done < 50) {
    int n = 2, r = 1 + int(rng() % 2), J = 1;
    auto K = randgen::rcurvature(rng, n, r, 1, J, false);
    auto m = rescale::FilteredModel::clifford_model(n, r, 1, J);
    auto conn = model_connection(K, m);
    auto sec = randgen::rsection_fiber(rng, m, 2, 3, J);
    if (sec.is_zero()) continue;
    auto ord = rescale::taylor_order(m, conn, sec);
    if (ord.value == rescale::kPosInf || !ord.stable) continue;
    LaurentSection s;
    s.add(ord.value, sec);
    GradedElem ev = rescale::eval_section_zero(m, conn, s, {});
    for (int j = 0; j < n; ++j) {
      LaurentSection Dn, Dc;
      for (const auto& [p, sp] : s.terms) {
        Dn.add(p - 1, rescale::covariant_derivative(m, conn, j, sp));
        Dc.add(p - 1, GradedElem::gen(m.ssp, j) * sp);
      }
      if (rescale::eval_section_zero(m, conn, Dn, {}) != sym_nabla(K, j, ev))
        return fail({{"generator", "nabla"}, {"j", j}, {"section", sec.str()}});
      if (rescale::eval_section_zero(m, conn, Dc, {}) != sym_clifford(K, j, ev))
        return fail({{"generator", "clifford"}, {"j", j}});
    }
    LaurentSection Dp;
    for (const auto& [p, sp] : s.terms) Dp.add(p - 2, GradedElem::lie_var(m.ssp, 0) * sp);
    if (rescale::eval_section_zero(m, conn, Dp, {}) != sym_poly(GradedElem::lie_var(K.ssp, 0), ev))
      return fail({{"generator", "poly"}});
    ++done;
  }
  return pass();
}

inline CheckResult check_oscillator_composition(const RunConfig& cfg) {
  using namespace symbols;
  randgen::Rng rng(cfg.seed ^ 0xe2);
  for (int it = 0; it < 20; ++it) {
    auto K = randgen::rcurvature(rng, 2, 2, 1, 1, true);
    auto s = randgen::rsection_fiber(rng, rescale::FilteredModel::clifford_model(2, 2, 1, 1), 2, 3,
                                     1)
                 .with_alg(Alg::Exterior);
    GradedElem sE = reinterpret_blades(s, K.ssp);
    GradedElem rhs(K.ssp);
    for (int i = 0; i < 2; ++i) rhs -= sym_conj_nabla(K, i, sym_conj_nabla(K, i, sE));
    rhs += twisting_value(K) * sE;
    if (harmonic_oscillator(K, sE) != rhs) return fail({{"it", it}});
  }
  return pass();
}

inline CheckResult check_dirac_identities(const RunConfig&) {
  using namespace symbols;
  auto d0 = ChartDiracData::make(2, 1, 2, {{0, -1}, {1, 0}});
  auto rep0 = chart_dirac_identities(d0, {Rational(0), Rational(1, 4), Rational(1)}, 4);
  if (!rep0.ok()) return fail({{"model", "plain rotation"}, {"witness", rep0.witness}});

  auto d1 = ChartDiracData::make(4, 2, 2,
                                 {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -2, 0}});
  d1.A[0] = GradedElem::matrix_unit(d1.csp, 0, 1) * GradedElem::chart_var(d1.csp, 1);
  d1.A[1] = GradedElem::matrix_unit(d1.csp, 1, 0) * GradedElem::chart_var(d1.csp, 2);
  d1.L = GradedElem::matrix_unit(d1.csp, 0, 0) * GradedElem::lie_var(d1.csp, 0) * Rational(3);
  auto rep1 = chart_dirac_identities(d1, {Rational(0), Rational(1, 4), Rational(2, 3)}, 2);
  if (!rep1.ok()) return fail({{"model", "twisted"}, {"witness", rep1.witness}});
  return pass();
}

inline CheckResult check_conjugate_omega(const RunConfig& cfg) {
  using namespace symbols;
  Space sp;
  sp.chart_dim = 2;
  sp.vsplit = 2;
  sp.lie_dim = 1;
  sp.J = 2;
  std::vector<GradedElem> theta{
      GradedElem::chart_var(sp, 1) * GradedElem::lie_var(sp, 0) * Rational(-1),
      GradedElem::chart_var(sp, 0) * GradedElem::lie_var(sp, 0)};
  auto omega = conjugate_form_omega(sp, theta);
  GradedElem ir(sp);
  for (int j = 0; j < 2; ++j) ir += GradedElem::chart_var(sp, j) * omega[j];
  if (!ir.is_zero()) return fail({{"case", "radial contraction"}});
  for (int j = 0; j < 2; ++j)
    if (!omega[j].subst_chart(0, 0).subst_chart(1, 0).is_zero())
      return fail({{"case", "diagonal value"}});
  randgen::Rng rng(cfg.seed ^ 0xe3);
  for (int it = 0; it < 10; ++it) {
    std::vector<GradedElem> th;
    for (int j = 0; j < 2; ++j) {
      GradedElem c = randgen::rpoly(rng, sp, 3, 3);
      c -= c.subst_chart(0, 0).subst_chart(1, 0);
      th.push_back(c);
    }
    auto om = conjugate_form_omega(sp, th);
    GradedElem r2(sp);
    for (int j = 0; j < 2; ++j) r2 += GradedElem::chart_var(sp, j) * om[j];
    if (!r2.is_zero()) return fail({{"case", "random radial contraction"}, {"it", it}});
  }
  return pass();
}

// ---------------------------------------------------------------------------
// mehler suite
// ---------------------------------------------------------------------------

inline CheckResult check_heat_rules(const RunConfig&) {
  using namespace mehler;
  for (int n : {1, 2, 4}) {
    auto sp = symbols::symbol_space(n, 1, 0, 0);
    auto free = GaussianElement::free_kernel(n, sp);
    auto K0 = symbols::zero_curvature(n, 1, 0, 0);
    auto res = d_tau(free);
    auto h = heat_operator(K0, free);
    for (const auto& [t, v] : h.body) res.add(t, v);
    if (!res.is_zero()) return fail({{"n", n}, {"residual", res.str()}});
  }
  return pass();
}

inline CheckResult check_heat_equation(const RunConfig& cfg) {
  using namespace mehler;
  randgen::Rng rng(cfg.seed ^ 0xf1);
  for (int it = 0; it < 20; ++it) {
    int n = (it % 2) ? 4 : 2;
    int J = 1 + (it % 4) / 2;
    int r = 1 + int(rng() % 2);
    int d = 1 + int(rng() % 2);
    auto K = randgen::rcurvature(rng, n, r, d, J, true);
    auto res = verify_heat_equation(K);
    if (!res.is_zero())
      return fail({{"it", it}, {"n", n}, {"J", J}, {"residual", res.str()}});
  }
  return pass();
}

inline CheckResult check_supertrace_class(const RunConfig& cfg) {
  using namespace mehler;
  randgen::Rng rng(cfg.seed ^ 0xf2);
  for (int it = 0; it < 10; ++it) {
    auto K = randgen::rcurvature(rng, 2, 1 + it % 2, 1, 1 + it % 2, true);
    auto lhs = kernel_supertrace_at_one(K);
    auto rhs = equivariant_class_top(K);
    if (lhs != rhs) return fail({{"it", it}, {"lhs", lhs.str()}, {"rhs", rhs.str()}});
  }
  return pass();
}

inline CheckResult check_moment_adjoint(const RunConfig& cfg) {
  using namespace mehler;
  randgen::Rng rng(cfg.seed ^ 0xf3);
  for (int it = 0; it < 5; ++it) {
    auto K = symbols::zero_curvature(2, 2, 1, 1);
    GradedElem r01 = GradedElem::blade(K.ssp, 0b11) * randgen::rrat(rng);
    K.R[0][1] = r01;
    K.R[1][0] = -r01;
    GradedElem f01 = (GradedElem::matrix_unit(K.ssp, 0, 1) - GradedElem::matrix_unit(K.ssp, 1, 0)) *
                     randgen::rrat(rng);
    K.F2[0][1] = f01;
    K.F2[1][0] = -f01;
    K.muES = (GradedElem::matrix_unit(K.ssp, 0, 1) + GradedElem::matrix_unit(K.ssp, 1, 0)) *
             GradedElem::lie_var(K.ssp, 0) * randgen::rrat(rng);
    auto ker = mehler_kernel(K);
    auto mkpoly = [&]() {
      return reinterpret_blades(
          randgen::rsection_fiber(rng, rescale::FilteredModel::clifford_model(2, 2, 1, 1), 3, 4, 1)
              .with_alg(Alg::Exterior),
          K.ssp);
    };
    GradedElem pL = mkpoly();
    auto gR = mul_value(mkpoly(), ker);
    for (int i = 0; i < 2; ++i)
      if (!moment_functional(d_xi(gR, i)).empty())
        return fail({{"case", "total derivative moment nonzero"}});
    if (gauss_pairing(symbols::harmonic_oscillator(K, pL), gR) !=
        gauss_pairing(pL, heat_operator(K, gR)))
      return fail({{"case", "self-adjointness"}, {"it", it}});
  }
  return pass();
}

// ---------------------------------------------------------------------------
// kirillov suite
// ---------------------------------------------------------------------------

inline CheckResult check_area(const RunConfig& cfg) {
  using namespace kirillov;
  auto area = integrate_sphere(cfg.quad, [](int, double a, double b) {
    return Complex(GeometryModel::lambda2(a * a + b * b), 0.0);
  });
  double err = std::abs(area.real() - 4.0 * kPi);
  if (err > 1e-10) return fail({{"area", area.real()}, {"err", err}});
  return pass();
}

inline CheckResult check_chern(const RunConfig& cfg) {
  using namespace kirillov;
  for (int k = 0; k <= 3; ++k) {
    auto intF = integrate_sphere(cfg.quad, [&](int, double a, double b) {
      return GeometryModel::line_curvature_per_vol(k) * GeometryModel::lambda2(a * a + b * b);
    });
    Complex chern = kI / (2.0 * kPi) * intF;
    if (std::abs(chern - Complex(double(k), 0)) > 1e-9)
      return fail({{"k", k}, {"chern", chern.real()}});
  }
  return pass();
}

inline CheckResult check_kirillov_nonequivariant(const RunConfig& cfg) {
  using namespace kirillov;
  for (int k = 0; k <= 3; ++k) {
    auto rep = kirillov_check(k, 0.0, cfg.quad, 1e-8);
    if (!rep.pass)
      return fail({{"k", k}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"absdiff", rep.absdiff}});
  }
  return pass();
}

inline CheckResult check_kirillov_equivariant(const RunConfig& cfg) {
  using namespace kirillov;
  for (int k = 0; k <= 2; ++k)
    for (double s : {0.1, 0.3, 0.5}) {
      auto rep = kirillov_check(k, s, cfg.quad, 1e-6);
      if (!rep.pass)
        return fail(
            {{"k", k}, {"s", s}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"absdiff", rep.absdiff}});
    }
  return pass();
}

inline CheckResult check_theta_moment_numeric(const RunConfig& cfg) {
  using namespace kirillov;
  std::mt19937_64 rng(cfg.seed ^ 0x91);
  double s = 0.7;
  for (int it = 0; it < 100; ++it) {
    int chart = int(rng() % 2);
    double a = -1.5 + 3.0 * double(rng() % 10000) / 10000.0;
    double b = -1.5 + 3.0 * double(rng() % 10000) / 10000.0;
    double rho2 = a * a + b * b;
    double lhs = s * GeometryModel::dtheta_coeff(chart, a, b);
    double rhs = 2.0 * GeometryModel::moment_riemann(chart, s, rho2) *
                 GeometryModel::lambda2(rho2);
    if (std::abs(lhs - rhs) > 1e-10) return fail({{"chart", chart}, {"a", a}, {"b", b}});
  }
  return pass();
}

inline CheckResult check_partition_invariance(const RunConfig& cfg) {
  using namespace kirillov;
  std::vector<std::pair<double, double>> windows{{-0.3, 0.3}, {-0.1, 0.45}, {-0.55, 0.05}};
  GeometryModel geo{2};
  std::vector<Complex> vals;
  for (auto [lo, hi] : windows) {
    auto q = cfg.quad;
    q.h_lo = lo;
    q.h_hi = hi;
    vals.push_back(integrate(geo, 0.3, q).value);
  }
  if (std::abs(vals[0] - vals[1]) > 1e-9 || std::abs(vals[0] - vals[2]) > 1e-9)
    return fail({{"v0", vals[0].real()}, {"v1", vals[1].real()}, {"v2", vals[2].real()}});
  return pass();
}

inline CheckResult check_kirillov_single(const RunConfig& cfg) {
  using namespace kirillov;
  auto rep = kirillov_check(cfg.k, cfg.s, cfg.quad, cfg.tolerance);
  if (!rep.converged)
    return inconclusive({{"k", cfg.k}, {"s", cfg.s}, {"reason", "quadrature not converged"}});
  if (!rep.pass)
    return fail(
        {{"k", cfg.k}, {"s", cfg.s}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"absdiff", rep.absdiff}});
  return pass();
}

// ---------------------------------------------------------------------------
// registry and runner
// ---------------------------------------------------------------------------

inline const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"algebra.clifford_relation", "clifford-relation", "algebra", check_clifford_relation},
      {"algebra.quantize_roundtrip", "quantization-inverse", "algebra", check_quantize_roundtrip},
      {"algebra.berezin", "berezin-supertrace", "algebra", check_berezin},
      {"algebra.supertrace_symmetry", "supertrace-graded-symmetry", "algebra",
       check_supertrace_symmetry},
      {"algebra.filtration_subadditive", "clifford-filtration-subadditive", "algebra",
       check_filtration_subadditive},

      {"forms.cartan_identities", "cartan-identities", "forms", check_cartan_identities},
      {"forms.dg_squared", "equivariant-differential-square", "forms", check_dg_squared},
      {"forms.moment_kosmann", "kosmann-spinor-moment", "forms", check_moment_kosmann},
      {"forms.ahat_series", "ahat-one-variable-series", "forms", check_ahat_oracle},
      {"forms.ahat_blocks", "ahat-block-multiplicativity", "forms", check_ahat_blocks},
      {"forms.ch_additive", "chern-character-additivity", "forms", check_ch_additive},
      {"forms.equivariantly_closed", "equivariant-closedness", "forms",
       check_equivariantly_closed},

      {"dnc.membership", "laurent-membership", "dnc", check_dnc_membership},
      {"dnc.homomorphism", "character-homomorphism", "dnc", check_dnc_homomorphism},
      {"dnc.exp_factorization", "character-exp-factorization", "dnc",
       check_dnc_exp_factorization},
      {"dnc.euler_like", "euler-like-fields", "dnc", check_dnc_euler_like},
      {"dnc.spectral_continuity", "spectrum-continuity", "dnc", check_dnc_continuity},

      {"rescale.scaling_equals_taylor", "scaling-order-equals-taylor-order", "rescale",
       check_scaling_equals_taylor},
      {"rescale.order_monotonicity", "order-monotonicity-lemmas", "rescale",
       check_order_monotonicity},
      {"rescale.frame_rank", "rescaled-frame-constant-rank", "rescale", check_frame_rank},
      {"rescale.str_t", "supertrace-smooth-extension", "rescale", check_str_t},
      {"rescale.witten_novikov", "witten-novikov-membership", "rescale", check_witten},

      {"symbols.generator_symbols", "zero-fiber-symbols", "symbols", check_generator_symbols},
      {"symbols.oscillator_composition", "harmonic-oscillator-composition", "symbols",
       check_oscillator_composition},
      {"symbols.dirac_identities", "flat-chart-dirac-identities", "symbols",
       check_dirac_identities},
      {"symbols.conjugate_omega", "conjugate-connection-one-form", "symbols",
       check_conjugate_omega},

      {"mehler.heat_rules", "gaussian-derivative-rules", "mehler", check_heat_rules},
      {"mehler.heat_equation", "mehler-heat-equation", "mehler", check_heat_equation},
      {"mehler.supertrace_class", "kernel-supertrace-equals-class", "mehler",
       check_supertrace_class},
      {"mehler.moment_adjoint", "oscillator-formal-self-adjointness", "mehler",
       check_moment_adjoint},

      {"kirillov.area", "sphere-area", "kirillov", check_area},
      {"kirillov.chern", "chern-number", "kirillov", check_chern},
      {"kirillov.nonequivariant", "index-at-s-zero", "kirillov", check_kirillov_nonequivariant},
      {"kirillov.equivariant", "kirillov-formula-grid", "kirillov", check_kirillov_equivariant},
      {"kirillov.theta_moment", "theta-moment-relation-numeric", "kirillov",
       check_theta_moment_numeric},
      {"kirillov.partition_invariance", "partition-of-unity-invariance", "kirillov",
       check_partition_invariance},
      {"kirillov.single", "kirillov-formula-single", "kirillov", check_kirillov_single},
  };
  return checks;
}

struct Report {
  json doc;
  int failures = 0;
  int inconclusives = 0;

  int exit_code() const { return (failures || inconclusives) ? 1 : 0; }
};

/// Execute the selected suites and assemble the machine-readable report.
inline Report run(const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.doc["schema_version"] = "1.0";
  rep.doc["seed"] = cfg.seed;
  rep.doc["suite"] = cfg.suite;
  json checks = json::array();
  int npass = 0;
  for (const auto& c : registry()) {
    if (cfg.suite != "all" && c.suite != cfg.suite) continue;
    if (c.id == "kirillov.single") {
      if (!(cfg.suite == "kirillov" && cfg.k_s_explicit)) continue;
    } else if (cfg.suite == "kirillov" && cfg.k_s_explicit) {
      continue;  // single-record mode
    }
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = c.fn(cfg);
    } catch (const std::exception& e) {
      res = fail({{"exception", e.what()}});
    }
    auto t1 = std::chrono::steady_clock::now();
    res.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    json entry;
    entry["id"] = c.id;
    entry["anchor"] = c.anchor;
    entry["status"] = res.status;
    entry["witness"] = res.witness.is_null() ? json(nullptr) : res.witness;
    entry["ms"] = res.ms;
    checks.push_back(entry);
    if (res.status == "pass")
      ++npass;
    else if (res.status == "fail")
      ++rep.failures;
    else
      ++rep.inconclusives;
  }
  rep.doc["checks"] = checks;
  rep.doc["summary"] = {{"pass", npass}, {"fail", rep.failures}, {"inconclusive", rep.inconclusives}};
  return rep;
}

/// Parse a JSON config document into a RunConfig (CLI flags may override).
inline RunConfig parse_config(const json& j) {
  RunConfig cfg;
  if (j.contains("suite")) cfg.suite = j.at("suite").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    if (t.contains("ydeg")) cfg.ydeg_bound = t.at("ydeg").get<int>();
    if (t.contains("J")) cfg.J = t.at("J").get<int>();
  }
  if (j.contains("op_bound")) cfg.op_bound = j.at("op_bound").get<int>();
  if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  if (j.contains("sweep")) cfg.sweep_path = j.at("sweep").get<std::string>();
  if (j.contains("kirillov")) {
    const auto& kj = j.at("kirillov");
    if (kj.contains("k")) {
      cfg.k = kj.at("k").get<int>();
      cfg.k_s_explicit = true;
    }
    if (kj.contains("s")) {
      cfg.s = kj.at("s").get<double>();
      cfg.k_s_explicit = true;
    }
  }
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    if (q.contains("gl_order")) cfg.quad.gl_order = q.at("gl_order").get<int>();
    if (q.contains("radial_panels")) cfg.quad.radial_panels = q.at("radial_panels").get<int>();
    if (q.contains("phi_points")) cfg.quad.phi_points = q.at("phi_points").get<int>();
    if (q.contains("h_lo")) cfg.quad.h_lo = q.at("h_lo").get<double>();
    if (q.contains("h_hi")) cfg.quad.h_hi = q.at("h_hi").get<double>();
    if (q.contains("tolerance")) cfg.quad.tolerance = q.at("tolerance").get<double>();
  }
  return cfg;
}

}  // namespace eqindex::harness
