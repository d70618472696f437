#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqindex/dnc.hpp"

using namespace eqindex;
using namespace eqindex::dnc;

namespace {

GradedElem mono(const Space& sp, std::vector<int> exps, Rational c = 1) {
  Mono m(sp.chart_dim + sp.lie_dim, 0);
  for (size_t i = 0; i < exps.size(); ++i) m[i] = uint8_t(exps[i]);
  return GradedElem::term(sp, Scalar::from_rational(c), 0, 0, 0, m);
}

LaurentFn random_member(std::mt19937_64& rng, const Space& sp) {
  LaurentFn f(sp);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 5; ++t) {
    int p = int(rng() % 5) - 2;
    std::vector<int> e(sp.chart_dim, 0);
    int l = sp.vsplit;
    for (int i = 0; i < l; ++i) e[i] = int(rng() % 3);
    int ydeg = 0;
    for (int i = l; i < sp.chart_dim; ++i) {
      e[i] = int(rng() % 3);
      ydeg += e[i];
    }
    if (p > ydeg) p = ydeg;  // keep membership
    f.add(p, mono(sp, e, coef(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("membership by monomial inspection") {
  auto sp = chart_space(1, 2);  // x0; y = (z1, z2)
  LaurentFn f1(sp);
  f1.add(1, mono(sp, {0, 1, 0}));  // y1 t^-1
  CHECK(membership(f1));

  LaurentFn f2(sp);
  f2.add(1, mono(sp, {1, 0, 0}));  // x1 t^-1
  CHECK(!membership(f2));

  LaurentFn f3(sp);
  f3.add(2, mono(sp, {0, 1, 1}) + mono(sp, {0, 3, 0}));  // (y1 y2 + y1^3) t^-2
  CHECK(membership(f3));
}

TEST_CASE("eval_generic examples and homomorphism property") {
  auto sp = chart_space(1, 2);
  LaurentFn f(sp);
  f.add(1, mono(sp, {0, 1, 0}));  // y1 t^-1
  CHECK(eval_generic(f, {0, 3, 0}, 2) == Scalar::from_rational(Rational(3, 2)));

  LaurentFn c5(sp);
  c5.add(0, mono(sp, {0, 0, 0}, 5));
  CHECK(eval_generic(c5, {7, -1, 2}, Rational(1, 3)) == Scalar::from_rational(5));

  CHECK_THROWS(eval_generic(f, {0, 3, 0}, 0));

  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    auto a = random_member(rng, sp), b = random_member(rng, sp);
    std::vector<Rational> v{Rational(int(rng() % 5) - 2), Rational(int(rng() % 5) - 2),
                            Rational(int(rng() % 5) - 2)};
    Rational lam(1 + int(rng() % 5), 1 + int(rng() % 3));
    CHECK(eval_generic(a * b, v, lam) == eval_generic(a, v, lam) * eval_generic(b, v, lam));
  }
}

TEST_CASE("eval_zero examples") {
  auto sp = chart_space(1, 2);
  LaurentFn f(sp);
  f.add(1, mono(sp, {0, 1, 0}));  // y1 t^-1
  CHECK(eval_zero(f, {0}, {Rational(5, 2), 0}) == Scalar::from_rational(Rational(5, 2)));

  LaurentFn g(sp);
  g.add(0, mono(sp, {2, 0, 0}, 3));  // 3 x0^2 at t^0
  CHECK(eval_zero(g, {2}, {1, 1}) == Scalar::from_rational(12));

  LaurentFn h(sp);
  h.add(2, mono(sp, {0, 2, 0}));  // y1^2 t^-2
  CHECK(eval_zero(h, {0}, {Rational(7), 0}) == Scalar::from_rational(49));
}

TEST_CASE("eval_zero is an algebra homomorphism") {
  auto sp = chart_space(2, 2);
  std::mt19937_64 rng(47);
  for (int it = 0; it < 100; ++it) {
    auto a = random_member(rng, sp), b = random_member(rng, sp);
    std::vector<Rational> m{Rational(int(rng() % 3) - 1), Rational(int(rng() % 3) - 1)};
    std::vector<Rational> X{Rational(int(rng() % 5) - 2), Rational(int(rng() % 5) - 2)};
    CHECK(eval_zero(a * b, m, X) == eval_zero(a, m, X) * eval_zero(b, m, X));
  }
}

TEST_CASE("exp-composition factorization on basis monomials, |alpha| <= 5") {
  auto sp = chart_space(1, 2);
  for (int a1 = 0; a1 <= 3; ++a1)
    for (int a2 = 0; a2 + a1 <= 5; ++a2)
      for (int b = 0; b <= 2; ++b)
        for (int p = -2; p <= a1 + a2; ++p) {
          LaurentFn f(sp);
          f.add(p, mono(sp, {b, a1, a2}));
          std::vector<Rational> m{Rational(3, 2)};
          std::vector<Rational> X{Rational(2), Rational(-1, 2)};
          CHECK(eval_zero(f, m, X) == eval_zero_via_exp(f, m, X));
        }
}

TEST_CASE("spectral continuity: generic evaluation along lambda = 2^-j approaches eval_zero") {
  auto sp = chart_space(1, 1);
  for (int a = 0; a <= 4; ++a)
    for (int p = 0; p <= a; ++p) {
      LaurentFn f(sp);
      f.add(p, mono(sp, {1, a}));  // x * y^a t^-p
      std::vector<Rational> m{Rational(1, 3)};
      std::vector<Rational> X{Rational(5, 4)};
      Scalar limit = eval_zero(f, m, X);
      Rational lam = 1;
      Scalar prev_diff = Scalar::zero();
      for (int j = 1; j <= 12; ++j) {
        lam /= 2;
        std::vector<Rational> v{m[0], lam * X[0]};  // path point (m + lam X_m, lam)
        Scalar val = eval_generic(f, v, lam);
        if (a == p) CHECK(val == limit);  // exact on the nose when a == p
        prev_diff = val - limit;
      }
      if (a > p) {
        // |difference| = (lam)^{a-p} |x X^a| is strictly below 2^{-(a-p)*6}
        Rational mag = prev_diff.rational_value();
        if (mag < 0) mag = -mag;
        CHECK(mag < Rational(1, BigInt(1) << (6 * (a - p))));
      }
    }
}

TEST_CASE("euler_like_check") {
  auto sp = chart_space(0, 2);
  std::vector<GradedElem> euler{GradedElem::chart_var(sp, 0),
                                GradedElem::chart_var(sp, 1)};  // y1 d1 + y2 d2
  CHECK(euler_like_check(euler, mono(sp, {1, 1}), 2));  // R(y1 y2) = 2 y1 y2 exactly

  std::vector<GradedElem> pert = euler;
  pert[0] += mono(sp, {2, 0});  // + y1^2 d/dy1
  CHECK(euler_like_check(pert, mono(sp, {1, 0}), 1));

  std::vector<GradedElem> trans{GradedElem::one(sp), GradedElem::zero(sp)};
  CHECK(!euler_like_check(trans, mono(sp, {1, 0}), 1));

  CHECK_THROWS(euler_like_check(euler, mono(sp, {1, 0}), 2));
}
