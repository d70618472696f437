#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqindex/chart_dirac.hpp"
#include "eqindex/randgen.hpp"
#include "eqindex/symbol_ops.hpp"

using namespace eqindex;
using namespace eqindex::symbols;
using eqindex::rescale::FilteredModel;
using eqindex::rescale::LaurentSection;


TEST_CASE("sym_nabla: flat derivative, curvature term, linearity") {
  auto K0 = zero_curvature(2, 1, 1, 1);
  auto eta1 = GradedElem::chart_var(K0.ssp, 1);
  CHECK(sym_nabla(K0, 1, eta1) == GradedElem::one(K0.ssp));

  // K(e_1, e_0) = e0^e1 blade: realized by R[1][0] = 2 * blade
  auto K = zero_curvature(2, 1, 1, 1);
  K.R[1][0] = GradedElem::blade(K.ssp, 0b11) * Rational(2);
  K.R[0][1] = -K.R[1][0];
  auto got = sym_nabla(K, 0, GradedElem::one(K.ssp));
  auto want = GradedElem::chart_var(K.ssp, 1) * GradedElem::blade(K.ssp, 0b11) * Rational(1, 2);
  CHECK(got == want);

  randgen::Rng rng(8);
  for (int it = 0; it < 20; ++it) {
    auto s1 = randgen::rpoly(rng, K.ssp, 2, 3);
    auto s2 = randgen::rpoly(rng, K.ssp, 2, 3);
    CHECK(sym_nabla(K, 0, s1 + s2) == sym_nabla(K, 0, s1) + sym_nabla(K, 0, s2));
  }
}

TEST_CASE("sym_clifford and sym_poly") {
  auto K = zero_curvature(2, 1, 1, 1);
  CHECK(sym_clifford(K, 0, GradedElem::one(K.ssp)) == GradedElem::gen(K.ssp, 0));
  CHECK(sym_clifford(K, 0, GradedElem::gen(K.ssp, 0)).is_zero());

  // J = 1 truncation kills X^2
  auto X0 = GradedElem::lie_var(K.ssp, 0);
  CHECK(sym_poly(X0 * X0, GradedElem::one(K.ssp)).is_zero());
  CHECK(sym_poly(X0, X0).is_zero());
}

TEST_CASE("sym_conj_nabla: reduction and the quarter-moment term") {
  auto K0 = zero_curvature(2, 1, 1, 1);
  randgen::Rng rng(15);
  for (int it = 0; it < 10; ++it) {
    auto s = randgen::rpoly(rng, K0.ssp, 2, 3);
    CHECK(sym_conj_nabla(K0, 0, s) == sym_nabla(K0, 0, s));
  }

  // n=2 rotation: muM = X J2 with (mu e_0, e_1) = X
  auto K = zero_curvature(2, 1, 1, 1);
  K.muM[0][1] = GradedElem::lie_var(K.ssp, 0);
  K.muM[1][0] = -K.muM[0][1];
  auto got = sym_conj_nabla(K, 0, GradedElem::one(K.ssp));
  // (1/4)(mu(X) eta, e_0) = (1/4) eta_1 mu[1][0] = -(1/4) X eta_1
  auto want = GradedElem::chart_var(K.ssp, 1) * GradedElem::lie_var(K.ssp, 0) * Rational(-1, 4);
  CHECK(got == want);

  // linearity in X: scaling the moment scales the extra term
  auto K2 = K;
  K2.muM[0][1] = K.muM[0][1] * Rational(3);
  K2.muM[1][0] = -K2.muM[0][1];
  auto got3 = sym_conj_nabla(K2, 0, GradedElem::one(K.ssp));
  CHECK(got3 == want * Rational(3));
}

TEST_CASE("harmonic_oscillator: flat case, potential term, operator-identity oracle") {
  auto K0 = zero_curvature(2, 2, 1, 1);
  randgen::Rng rng(23);
  for (int it = 0; it < 5; ++it) {
    auto s = randgen::rpoly(rng, K0.ssp, 3, 3);
    GradedElem lap(K0.ssp);
    for (int i = 0; i < 2; ++i) lap -= s.dchart(i).dchart(i);
    CHECK(harmonic_oscillator(K0, s) == lap);
  }

  auto Kp = zero_curvature(2, 2, 1, 1);
  Kp.muES = GradedElem::matrix_unit(Kp.ssp, 0, 1) * GradedElem::lie_var(Kp.ssp, 0);
  CHECK(harmonic_oscillator(Kp, GradedElem::one(Kp.ssp)) == Kp.muES);

  // cross-validation: -sum sym_conj_nabla^2 + F + muES on random sections
  for (int it = 0; it < 20; ++it) {
    auto K = randgen::rcurvature(rng, 2, 2, 1, 1, true);
    auto s = randgen::rsection_fiber(rng, FilteredModel::clifford_model(2, 2, 1, 1), 2, 3, 1)
                 .with_alg(Alg::Exterior);
    GradedElem sE = reinterpret_blades(s, K.ssp);
    GradedElem rhs(K.ssp);
    for (int i = 0; i < 2; ++i) rhs -= sym_conj_nabla(K, i, sym_conj_nabla(K, i, sE));
    rhs += twisting_value(K) * sE;
    CHECK(harmonic_oscillator(K, sE) == rhs);
  }
}

TEST_CASE("keystone: evaluation-map symbols equal the closed-form symbols") {
  randgen::Rng rng(606);
  int done = 0;
  while (done < 12) {
    int n = 2, r = 1 + int(rng() % 2), J = 1;
    auto K = randgen::rcurvature(rng, n, r, 1, J, false);
    auto m = FilteredModel::clifford_model(n, r, 1, J);
    auto conn = model_connection(K, m);
    REQUIRE(rescale::check_connection(m, conn).ok());

    auto sec = randgen::rsection_fiber(rng, m, 2, 3, J);
    if (sec.is_zero()) continue;
    auto ord = rescale::taylor_order(m, conn, sec);
    if (ord.value == rescale::kPosInf || !ord.stable) continue;
    LaurentSection s;
    s.add(ord.value, sec);
    REQUIRE(rescale::section_membership(m, conn, s).member);

    GradedElem ev = eval_section_zero(m, conn, s, {});

    // nabla_j, o^g = 1
    for (int j = 0; j < n; ++j) {
      LaurentSection Ds;
      for (const auto& [p, sp] : s.terms)
        Ds.add(p - 1, rescale::covariant_derivative(m, conn, j, sp));
      CHECK(eval_section_zero(m, conn, Ds, {}) == sym_nabla(K, j, ev));
    }
    // c(e_j), o^g = 1
    for (int j = 0; j < n; ++j) {
      LaurentSection Ds;
      for (const auto& [p, sp] : s.terms) Ds.add(p - 1, GradedElem::gen(m.ssp, j) * sp);
      CHECK(eval_section_zero(m, conn, Ds, {}) == sym_clifford(K, j, ev));
    }
    // p(X) = X_0, o^g = 2
    {
      LaurentSection Ds;
      for (const auto& [p, sp] : s.terms) Ds.add(p - 2, GradedElem::lie_var(m.ssp, 0) * sp);
      CHECK(eval_section_zero(m, conn, Ds, {}) == sym_poly(GradedElem::lie_var(K.ssp, 0), ev));
    }
    ++done;
  }
}

TEST_CASE("flat-chart Dirac identities: rotation action, with and without twisting") {
  // plain rotation on R^2, no auxiliary connection
  auto d0 = ChartDiracData::make(2, 1, 2, {{0, -1}, {1, 0}});
  auto rep0 = chart_dirac_identities(d0, {Rational(0), Rational(1, 4), Rational(1)}, 3);
  CHECK(rep0.ok());

  // block rotation on R^4 with a twisting connection and fiber action
  auto d1 = ChartDiracData::make(4, 2, 2,
                                 {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -2, 0}});
  d1.A[0] = GradedElem::matrix_unit(d1.csp, 0, 1) * GradedElem::chart_var(d1.csp, 1);
  d1.A[1] = GradedElem::matrix_unit(d1.csp, 1, 0) * GradedElem::chart_var(d1.csp, 2);
  d1.L = GradedElem::matrix_unit(d1.csp, 0, 0) * GradedElem::lie_var(d1.csp, 0) * Rational(3);
  auto rep1 = chart_dirac_identities(d1, {Rational(0), Rational(1, 4), Rational(2, 3)}, 2);
  CHECK(rep1.ok());
  if (!rep1.ok()) MESSAGE(rep1.witness);

  // A = 0, X = 0: D^2 = nabla* nabla (Lichnerowicz collapses)
  auto dz = ChartDiracData::make(2, 1, 2, {{0, 0}, {0, 0}});
  auto repz = chart_dirac_identities(dz, {Rational(0)}, 3);
  CHECK(repz.ok());
}

TEST_CASE("conjugate one-form omega: radial vanishing, linear part, diagonal vanishing") {
  Space sp;
  sp.chart_dim = 2;
  sp.vsplit = 2;
  sp.lie_dim = 1;
  sp.J = 2;

  // rotation theta: theta_j = sum_l C_jl y^l X, C = [[0,-1],[1,0]]
  std::vector<GradedElem> theta{
      GradedElem::chart_var(sp, 1) * GradedElem::lie_var(sp, 0) * Rational(-1),
      GradedElem::chart_var(sp, 0) * GradedElem::lie_var(sp, 0)};
  auto omega = conjugate_form_omega(sp, theta);

  // iota(R) omega = 0
  GradedElem ir(sp);
  for (int j = 0; j < 2; ++j) ir += GradedElem::chart_var(sp, j) * omega[j];
  CHECK(ir.is_zero());

  // omega = (1/4) sum_j (mu(X) R, e_j) dx^j + O(2), mu = -C; here exactly linear
  for (int j = 0; j < 2; ++j) {
    GradedElem lin(sp);
    for (int l = 0; l < 2; ++l) {
      Rational mujl = -(j == 0 ? (l == 1 ? Rational(-1) : Rational(0))
                               : (l == 0 ? Rational(1) : Rational(0)));
      if (mujl != 0)
        lin += GradedElem::chart_var(sp, l) * GradedElem::lie_var(sp, 0) * (mujl / 4);
    }
    CHECK(omega[j] == lin);
    // restriction to the base point vanishes
    CHECK(omega[j].subst_chart(0, 0).subst_chart(1, 0).is_zero());
  }

  // general polynomial theta vanishing at 0: radial contraction still vanishes
  randgen::Rng rng(77);
  for (int it = 0; it < 10; ++it) {
    std::vector<GradedElem> th;
    for (int j = 0; j < 2; ++j) {
      GradedElem c = randgen::rpoly(rng, sp, 3, 3);
      // remove the constant term so theta vanishes at the origin
      c -= c.subst_chart(0, 0).subst_chart(1, 0);
      th.push_back(c);
    }
    auto om = conjugate_form_omega(sp, th);
    GradedElem r2(sp);
    for (int j = 0; j < 2; ++j) r2 += GradedElem::chart_var(sp, j) * om[j];
    CHECK(r2.is_zero());
  }

  // nonvanishing theta rejected
  std::vector<GradedElem> bad{GradedElem::one(sp), GradedElem::zero(sp)};
  CHECK_THROWS(conjugate_form_omega(sp, bad));
}
