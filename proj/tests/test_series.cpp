#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqindex/series.hpp"

using namespace eqindex;

TEST_CASE("series inverse, log, exp round trips") {
  RatSeries a = sinh_half_ratio(12);
  RatSeries one(12);
  one[0] = 1;
  auto prod = a * a.inverse();
  for (int k = 0; k <= 12; ++k) CHECK(prod[k] == one[k]);

  auto lg = ahat_factor(12).log();
  auto back = lg.exp();
  auto f = ahat_factor(12);
  for (int k = 0; k <= 12; ++k) CHECK(back[k] == f[k]);
}

TEST_CASE("classical coefficients") {
  // (z/2)/sinh(z/2) = 1 - z^2/24 + 7 z^4/5760 - ...
  auto f = ahat_factor(8);
  CHECK(f[0] == 1);
  CHECK(f[2] == Rational(-1, 24));
  CHECK(f[4] == Rational(7, 5760));
  CHECK(f[1] == 0);
  CHECK(f[3] == 0);

  // (z/2)coth(z/2) = 1 + z^2/12 - z^4/720 + z^6/30240 - ...
  auto g = coth_half(8);
  CHECK(g[0] == 1);
  CHECK(g[2] == Rational(1, 12));
  CHECK(g[4] == Rational(-1, 720));
  CHECK(g[6] == Rational(1, 30240));

  // (z/2)/sin(z/2) = 1 + z^2/24 + 7 z^4/5760 + ...
  auto s = sin_half_ratio(8).inverse();
  CHECK(s[2] == Rational(1, 24));
  CHECK(s[4] == Rational(7, 5760));
}

TEST_CASE("nilpotent evaluation terminates; non-nilpotent rejected") {
  Space sp;
  sp.chart_dim = 1;
  sp.vsplit = 1;
  sp.fiber_dim = 3;
  sp.alg = Alg::Exterior;
  // w is a fiber 2-form; w*w = 0, so f(w) = 1 (the z^2 coefficient never lands)
  auto w = GradedElem::gen(sp, 0) * GradedElem::gen(sp, 1);
  auto val = ahat_factor(8).eval_nilpotent(w);
  CHECK(val == GradedElem::one(sp));

  // x + x^2/24-type check with a rank-one nilpotent pair e0^e1, e2-free square
  auto u = GradedElem::gen(sp, 0) + GradedElem::gen(sp, 1);
  auto g = coth_half(8);
  auto gv = g.eval_nilpotent(u);  // u^2 = 0 in Lambda
  CHECK(gv == GradedElem::one(sp));

  CHECK_THROWS(ahat_factor(4).eval_nilpotent(GradedElem::one(sp) * Rational(2)));
}
