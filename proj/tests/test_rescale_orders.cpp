#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqindex/randgen.hpp"

using namespace eqindex;
using namespace eqindex::rescale;

namespace {

GradedElem col(const FilteredModel& m, int row, std::vector<int> exps = {}, Rational c = 1) {
  Mono mo(m.ssp.chart_dim + m.ssp.lie_dim, 0);
  for (size_t i = 0; i < exps.size(); ++i) mo[i] = uint8_t(exps[i]);
  return GradedElem::term(m.ssp, Scalar::from_rational(c), 0, row, 0, mo);
}

}  // namespace

TEST_CASE("filtration_order examples") {
  auto m = FilteredModel::abstract_model(1, 1, {1, 2});  // chart (x0, y0)
  CHECK(filtration_order(m, col(m, 0)) == 1);                       // e1 -> q1 = 1
  CHECK(filtration_order(m, col(m, 0, {0, 1})) == kNegInf);         // y*e1 -> -inf
  CHECK(filtration_order(m, col(m, 0) + col(m, 1, {1, 0})) == 2);   // e1 + x e2 -> 2
}

TEST_CASE("taylor_expand: flat cases") {
  auto m = FilteredModel::abstract_model(0, 2, {0});
  auto conn = ConnectionData::flat(m);

  auto ex1 = taylor_expand(m, conn, col(m, 0, {1, 0}), 6);  // y1 e1
  REQUIRE(ex1.coeffs.size() == 1);
  CHECK(ex1.coeffs[0].index[0] == 1);
  CHECK(ex1.coeffs[0].value == col(m, 0));

  auto ex2 = taylor_expand(m, conn, col(m, 0) + col(m, 0, {1, 0}), 6);  // (1+y1)e1
  REQUIRE(ex2.coeffs.size() == 2);
}

TEST_CASE("taylor_expand with a nontrivial connection: resummation oracle and synchronicity") {
  auto m = FilteredModel::abstract_model(0, 1, {0, 0});
  auto conn = ConnectionData::flat(m);
  // A = y dy * E_{01}
  conn.A[0] = GradedElem::chart_var(m.ssp, 0) * GradedElem::matrix_unit(m.ssp, 0, 1);

  // transport is synchronous: nabla_R U = 0 up to the truncation order
  auto U = synchronous_transport(m, conn);
  GradedElem nablaRU =
      GradedElem::chart_var(m.ssp, 0) * covariant_derivative(m, conn, 0, U);
  CHECK(nablaRU.truncate_vertical_deg(m.trunc).is_zero());

  auto sec = col(m, 0) + col(m, 1, {3});
  auto ex = taylor_expand(m, conn, sec, 6);
  for (int N = 1; N <= 6; ++N) {
    GradedElem diff = sec - taylor_resum(m, ex, N);
    CHECK((diff.is_zero() || diff.min_vertical_degree() >= N));
  }
}

TEST_CASE("taylor_order examples and truncation sentinels") {
  auto m2 = FilteredModel::abstract_model(0, 1, {2});
  auto conn2 = ConnectionData::flat(m2);
  CHECK(taylor_order(m2, conn2, col(m2, 0)).value == -2);

  auto m0 = FilteredModel::abstract_model(0, 1, {0});
  auto conn0 = ConnectionData::flat(m0);
  CHECK(taylor_order(m0, conn0, col(m0, 0, {1})).value == 1);
  CHECK(taylor_order(m0, conn0, GradedElem::zero(m0.ssp)).value == kPosInf);
  CHECK(taylor_order(m0, conn0, col(m0, 0, {1})).stable);
}

TEST_CASE("scaling_order_bruteforce examples") {
  auto m0 = FilteredModel::abstract_model(0, 1, {0});
  auto conn0 = ConnectionData::flat(m0);
  auto r1 = scaling_order_bruteforce(m0, conn0, col(m0, 0, {1}), 3);  // y e1, q=0
  CHECK(r1.value == 1);
  CHECK(r1.conclusive);

  auto m2 = FilteredModel::abstract_model(0, 1, {2});
  auto conn2 = ConnectionData::flat(m2);
  auto r2 = scaling_order_bruteforce(m2, conn2, col(m2, 0), 3);  // e1, q=2
  CHECK(r2.value == -2);

  auto r0 = scaling_order_bruteforce(m0, conn0, col(m0, 0, {1}), 0);
  CHECK(!r0.conclusive);
}

TEST_CASE("theorem: scaling order equals Taylor order on random sections") {
  randgen::Rng rng(12345);
  int checked = 0;
  while (checked < 60) {
    auto m = randgen::rmodel(rng);
    auto conn = randgen::rconnection(rng, m);
    REQUIRE(check_connection(m, conn).ok());
    auto sec = randgen::rsection(rng, m);
    if (sec.is_zero()) continue;
    auto ot = taylor_order(m, conn, sec);
    auto osc = scaling_order_bruteforce(m, conn, sec, 6);
    if (!ot.stable || !osc.conclusive) continue;
    CHECK(osc.value == ot.value);
    ++checked;
  }
}

TEST_CASE("lemma: o^sc(D sigma) >= o^sc(sigma) - o^g(D)") {
  randgen::Rng rng(777);
  int checked = 0;
  while (checked < 40) {
    auto m = randgen::rmodel(rng);
    auto conn = randgen::rconnection(rng, m);
    auto sec = randgen::rsection(rng, m);
    if (sec.is_zero()) continue;
    auto D = randgen::rdiffop(rng, m);
    auto Ds = apply_diffop(m, conn, D, sec);
    auto o_sec = taylor_order(m, conn, sec);
    auto o_Ds = taylor_order(m, conn, Ds);
    if (!o_sec.stable || !o_Ds.stable) continue;
    if (o_Ds.value == kPosInf) {
      ++checked;
      continue;
    }
    CHECK(o_Ds.value >= o_sec.value - getzler_bound(m, D));
    ++checked;
  }
}

TEST_CASE("lemma: o^g(D1 D2) <= o^g(D1) + o^g(D2) via normal-form recomputation") {
  randgen::Rng rng(4242);
  for (int it = 0; it < 40; ++it) {
    auto m = randgen::rmodel(rng);
    auto conn = randgen::rconnection(rng, m);
    auto D1 = randgen::rdiffop(rng, m);
    auto D2 = randgen::rdiffop(rng, m);
    auto D12 = compose_normal_form(m, conn, D1, D2);
    if (D12.terms.empty()) continue;
    CHECK(getzler_bound(m, D12) <= getzler_bound(m, D1) + getzler_bound(m, D2));

    // the normal form acts identically to the composition
    auto sec = randgen::rsection(rng, m);
    CHECK(apply_diffop(m, conn, D12, sec) ==
          apply_diffop(m, conn, D1, apply_diffop(m, conn, D2, sec)));
  }
}

TEST_CASE("o^f(phi) <= o^g(phi) for End sections") {
  randgen::Rng rng(31415);
  for (int it = 0; it < 40; ++it) {
    auto m = randgen::rmodel(rng);
    int r = int(m.q.size());
    GradedElem phi(m.ssp);
    for (int t = 0; t < 3; ++t)
      phi += GradedElem::matrix_unit(m.ssp, randgen::rint(rng, 0, r - 1),
                                     randgen::rint(rng, 0, r - 1)) *
             randgen::rpoly(rng, m.ssp, 2, 2);
    if (phi.is_zero()) continue;
    // o^f of the restriction in the induced End filtration (degrees q_i - q_j)
    GradedElem rest = phi.restrict_vertical_zero();
    if (rest.is_zero()) continue;
    int of = kNegInf;
    for (const auto& [t, v] : rest.terms()) of = std::max(of, m.q[t.row] - m.q[t.col]);
    CHECK(of <= m.end_deg_of(phi));
  }
}

TEST_CASE("synchronous sections: vertical derivatives have no order-zero Taylor coefficient") {
  randgen::Rng rng(999);
  for (int it = 0; it < 20; ++it) {
    auto m = randgen::rmodel(rng, 1, 2, 3, 2);
    auto conn = randgen::rconnection(rng, m);
    auto U = synchronous_transport(m, conn);
    int r = int(m.q.size());
    GradedElem c0 = GradedElem::matrix_unit(m.ssp, randgen::rint(rng, 0, r - 1), 0);
    GradedElem sync = U * c0;  // synchronous section
    for (int j = 0; j < m.k; ++j) {
      GradedElem dY = covariant_derivative(m, conn, m.l + j, sync);
      CHECK(dY.restrict_vertical_zero().is_zero());
    }
  }
}
