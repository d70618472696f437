#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <complex>
#include <random>
#include <vector>

#include "eqindex/gradealg.hpp"

using namespace eqindex;
using namespace eqindex::gradealg;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: explicit spin representation of Cl(n) (e_i^2 = -1) by
// Kronecker products of Pauli matrices, with chirality Gamma = i^{n/2} e_1...e_n.
// Supertraces computed as honest matrix traces tr(Gamma * rho(a)).
// ---------------------------------------------------------------------------
using CMat = std::vector<std::vector<std::complex<double>>>;

CMat cmul(const CMat& a, const CMat& b) {
  size_t n = a.size();
  CMat r(n, std::vector<std::complex<double>>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}
CMat kron(const CMat& a, const CMat& b) {
  size_t n = a.size(), m = b.size();
  CMat r(n * m, std::vector<std::complex<double>>(n * m, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return r;
}
CMat ceye(size_t n) {
  CMat r(n, std::vector<std::complex<double>>(n, 0.0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1.0;
  return r;
}

// Generators rho(e_i) for Cl(n), n even: e_{2k} = i*s1, e_{2k+1} = i*s2 at slot
// k, with s3's to the left (Jordan-Wigner style), so that all pairs anticommute
// and each squares to -1.
std::vector<CMat> spin_generators(int n) {
  const std::complex<double> I(0, 1);
  CMat s1 = {{0, 1}, {1, 0}};
  CMat s2 = {{0, -I}, {I, 0}};
  CMat s3 = {{1, 0}, {0, -1}};
  int half = n / 2;
  std::vector<CMat> gens;
  for (int g = 0; g < n; ++g) {
    int slot = g / 2;
    CMat m = ceye(1);
    for (int k = 0; k < half; ++k) {
      if (k < slot)
        m = kron(m, s3);
      else if (k == slot)
        m = kron(m, (g % 2 == 0) ? s1 : s2);
      else
        m = kron(m, ceye(2));
    }
    // scale by i so the square is -1
    for (auto& row : m)
      for (auto& v : row) v *= I;
    gens.push_back(m);
  }
  return gens;
}

CMat rho_of_blade(const std::vector<CMat>& gens, uint32_t mask, int n) {
  CMat m = ceye(size_t(1) << (n / 2));
  for (int i = 0; i < n; ++i)
    if (mask & (uint32_t(1) << i)) m = cmul(m, gens[i]);
  return m;
}

std::complex<double> oracle_str(int n, uint32_t mask) {
  auto gens = spin_generators(n);
  uint32_t topmask = (uint32_t(1) << n) - 1;
  CMat gamma = rho_of_blade(gens, topmask, n);
  const std::complex<double> I(0, 1);
  std::complex<double> phase = std::pow(I, n / 2);
  for (auto& row : gamma)
    for (auto& v : row) v *= phase;  // Gamma = i^{n/2} e_1...e_n
  CMat m = cmul(gamma, rho_of_blade(gens, mask, n));
  std::complex<double> tr = 0;
  for (size_t i = 0; i < m.size(); ++i) tr += m[i][i];
  return tr;
}

}  // namespace

TEST_CASE("wedge: antisymmetry and products") {
  auto sp = exterior_space(3);
  auto e0 = e(sp, 0), e1 = e(sp, 1);
  CHECK(wedge(e0, e0).is_zero());
  CHECK(wedge(e0, e1) == basis(sp, 0b11));
  CHECK(wedge(e0 + e1, e1) == basis(sp, 0b11));  // bilinearity
  CHECK(wedge(e1, e0) == -basis(sp, 0b11));
}

TEST_CASE("wedge: associativity and graded commutativity on random elements") {
  std::mt19937_64 rng(7);
  auto sp = exterior_space(5);
  auto rand_mv = [&](void) {
    Multivector m = Multivector::zero(sp);
    for (int t = 0; t < 6; ++t) {
      uint32_t mask = uint32_t(rng() % 32);
      m += basis(sp, mask) * Scalar::from_rational(Rational(int(rng() % 7) - 3, 1 + int(rng() % 4)));
    }
    return m;
  };
  for (int it = 0; it < 25; ++it) {
    auto a = rand_mv(), b = rand_mv(), c = rand_mv();
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
  }
  // graded commutativity on homogeneous blades
  for (uint32_t ma = 0; ma < 32; ++ma)
    for (uint32_t mb = 0; mb < 32; ++mb) {
      auto ab = wedge(basis(sp, ma), basis(sp, mb));
      auto ba = wedge(basis(sp, mb), basis(sp, ma));
      int s = (blade_deg(ma) * blade_deg(mb)) % 2 ? -1 : 1;
      CHECK(ab == (s < 0 ? -ba : ba));
    }
}

TEST_CASE("clifford_mul: convention c(v)^2 = -|v|^2") {
  auto sp = clifford_space(3);
  auto e0 = e(sp, 0), e1 = e(sp, 1);
  CHECK(clifford_mul(e0, e0) == -Multivector::one(sp));
  CHECK(clifford_mul(e0, e1) == basis(sp, 0b11));
  auto e01 = basis(sp, 0b11);
  CHECK(clifford_mul(e01, e01) == -Multivector::one(sp));
}

TEST_CASE("clifford relation v*w + w*v = -2<v,w> for n up to 6") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 6; ++n) {
    auto sp = clifford_space(n);
    for (int it = 0; it < 20; ++it) {
      Multivector v = Multivector::zero(sp), w = Multivector::zero(sp);
      Rational dot = 0;
      std::vector<Rational> vc(n), wc(n);
      for (int i = 0; i < n; ++i) {
        vc[i] = Rational(int(rng() % 9) - 4, 1 + int(rng() % 3));
        wc[i] = Rational(int(rng() % 9) - 4, 1 + int(rng() % 3));
        v += e(sp, i) * Scalar::from_rational(vc[i]);
        w += e(sp, i) * Scalar::from_rational(wc[i]);
        dot += vc[i] * wc[i];
      }
      auto anti = clifford_mul(v, w) + clifford_mul(w, v);
      CHECK(anti == Multivector::one(sp) * Scalar::from_rational(-2 * dot));
    }
  }
}

TEST_CASE("clifford filtration sub-additivity") {
  std::mt19937_64 rng(3);
  auto sp = clifford_space(5);
  for (int it = 0; it < 50; ++it) {
    uint32_t ma = uint32_t(rng() % 32), mb = uint32_t(rng() % 32);
    auto p = clifford_mul(basis(sp, ma), basis(sp, mb));
    CHECK(p.max_blade_deg() <= blade_deg(ma) + blade_deg(mb));
  }
}

TEST_CASE("quantize and symbol_map are mutually inverse") {
  auto spe = exterior_space(3);
  auto e0 = e(spe, 0), e1 = e(spe, 1), e2 = e(spe, 2);
  CHECK(quantize(wedge(e0, e1)) == basis(clifford_space(3), 0b11));
  CHECK(symbol_map(basis(clifford_space(3), 0b111)) == wedge(wedge(e0, e1), e2));

  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; ++n) {
    auto sp = exterior_space(n);
    for (int it = 0; it < 17; ++it) {
      Multivector m = Multivector::zero(sp);
      for (int t = 0; t < 5; ++t)
        m += basis(sp, uint32_t(rng() % (1u << n))) *
             Scalar::from_rational(Rational(int(rng() % 11) - 5, 1 + int(rng() % 5)));
      CHECK(symbol_map(quantize(m)) == m);
    }
  }
}

TEST_CASE("berezin_str: examples and dimension guard") {
  // n=2, identity matrix tensor 1 -> no top part -> 0
  auto sp2 = clifford_space(2, 2);
  CHECK(berezin_str(GradedElem::identity(sp2)).is_zero());

  // n=2, 1x1 matrix tensor e0e1 -> -2i
  auto sp21 = clifford_space(2, 1);
  CHECK(berezin_str_scalar(basis(sp21, 0b11)) == Scalar::monomial(2, 3, 0));

  // n=4, 1x1 tensor e0e1e2e3 -> (-2i)^2 = -4
  auto sp41 = clifford_space(4, 1);
  CHECK(berezin_str_scalar(basis(sp41, 0b1111)) == Scalar::from_rational(-4));

  auto sp3 = clifford_space(3, 1);
  CHECK_THROWS(berezin_str(basis(sp3, 0b111)));
}

TEST_CASE("berezin_str agrees with the explicit spin representation, n=2 and 4") {
  for (int n : {2, 4}) {
    auto sp = clifford_space(n, 1);
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
      auto got = berezin_str_scalar(basis(sp, mask)).to_complex();
      auto want = oracle_str(n, mask);
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("supertrace property str(ab) = (-1)^{|a||b|} str(ba), n=2,4 exhaustive") {
  for (int n : {2, 4}) {
    auto sp = clifford_space(n, 1);
    for (uint32_t ma = 0; ma < (uint32_t(1) << n); ++ma)
      for (uint32_t mb = 0; mb < (uint32_t(1) << n); ++mb) {
        auto ab = berezin_str_scalar(clifford_mul(basis(sp, ma), basis(sp, mb)));
        auto ba = berezin_str_scalar(clifford_mul(basis(sp, mb), basis(sp, ma)));
        int sgn = (blade_deg(ma) * blade_deg(mb)) % 2 ? -1 : 1;
        CHECK(ab == (sgn < 0 ? -ba : ba));
      }
  }
}

TEST_CASE("dimension mismatch rejected") {
  auto a = e(exterior_space(2), 0);
  auto b = e(exterior_space(3), 0);
  CHECK_THROWS(wedge(a, b));
  CHECK_THROWS(clifford_mul(e(clifford_space(2), 0), e(clifford_space(4), 1)));
}
