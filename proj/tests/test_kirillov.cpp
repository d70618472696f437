#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqindex/sphere.hpp"

using namespace eqindex;
using namespace eqindex::kirillov;

TEST_CASE("quadrature sanity: area of the unit sphere is 4 pi") {
  QuadratureConfig cfg;
  auto area = integrate_sphere(cfg, [](int, double a, double b) {
    return Complex(GeometryModel::lambda2(a * a + b * b), 0.0);
  });
  CHECK(std::abs(area.real() - 4.0 * kPi) < 1e-10);
  CHECK(std::abs(area.imag()) < 1e-14);
}

TEST_CASE("line bundle curvature integrates to the Chern number") {
  QuadratureConfig cfg;
  for (int k = 0; k <= 3; ++k) {
    auto intF = integrate_sphere(cfg, [&](int, double a, double b) {
      return GeometryModel::line_curvature_per_vol(k) * GeometryModel::lambda2(a * a + b * b);
    });
    Complex chern = kI / (2.0 * kPi) * intF;
    CHECK(std::abs(chern - Complex(double(k), 0)) < 1e-9);
  }
}

TEST_CASE("index oracle: monomial counts and the weight ladder") {
  CHECK(index_oracle(0, 0.0).real() == doctest::Approx(1.0));
  CHECK(index_oracle(2, 0.0).real() == doctest::Approx(3.0));
  CHECK(index_oracle(3, 0.0).real() == doctest::Approx(4.0));
  CHECK(index_oracle(1, 0.5).real() == doctest::Approx(2.0 * std::cos(0.25)));
  // ladder symmetry makes the character real and even in s
  for (double s : {0.1, 0.4, 0.9}) {
    for (int k = 0; k <= 3; ++k) {
      CHECK(std::abs(index_oracle(k, s).imag()) < 1e-14);
      CHECK(std::abs(index_oracle(k, s) - index_oracle(k, -s)) < 1e-14);
    }
  }
  CHECK_THROWS(index_oracle(-1, 0.0));
}

TEST_CASE("Kirillov formula: non-equivariant point s = 0") {
  QuadratureConfig cfg;
  for (int k = 0; k <= 3; ++k) {
    auto rep = kirillov_check(k, 0.0, cfg, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.absdiff < 1e-8);
    CHECK(rep.rhs == doctest::Approx(double(k + 1)));
  }
}

TEST_CASE("Kirillov formula: equivariant grid") {
  QuadratureConfig cfg;
  for (int k = 0; k <= 2; ++k)
    for (double s : {0.1, 0.3, 0.5}) {
      auto rep = kirillov_check(k, s, cfg, 1e-6);
      CHECK(rep.pass);
      CHECK(rep.absdiff < 1e-6);
    }
}

TEST_CASE("partition-of-unity invariance across three windows") {
  std::vector<std::pair<double, double>> windows{{-0.3, 0.3}, {-0.1, 0.45}, {-0.55, 0.05}};
  double k = 2;
  std::vector<Complex> vals;
  for (auto [lo, hi] : windows) {
    QuadratureConfig cfg;
    cfg.h_lo = lo;
    cfg.h_hi = hi;
    GeometryModel geo{int(k)};
    vals.push_back(integrate(geo, 0.3, cfg).value);
  }
  CHECK(std::abs(vals[0] - vals[1]) < 1e-9);
  CHECK(std::abs(vals[0] - vals[2]) < 1e-9);
}

TEST_CASE("theta/moment relation holds numerically at 100 random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  double s = 0.7;
  for (int it = 0; it < 100; ++it) {
    int chart = int(rng() % 2);
    double a = U(rng), b = U(rng);
    double rho2 = a * a + b * b;
    double l2 = GeometryModel::lambda2(rho2);
    double m = GeometryModel::moment_riemann(chart, s, rho2);
    // analytic: d theta = -2 (mu e1, e2) vol = 2 m lambda^2 da db ... with
    // (mu e1, e2) = -m  (antisymmetric matrix, m in the (1,2) slot)
    double lhs = s * GeometryModel::dtheta_coeff(chart, a, b);
    double rhs = 2.0 * m * l2;
    CHECK(std::abs(lhs - rhs) < 1e-12);

    // finite-difference cross-check of d theta
    double h = 1e-5;
    auto th = [&](double x, double y, int comp) {
      double ta, tb;
      GeometryModel::theta(chart, x, y, ta, tb);
      return s * (comp == 0 ? ta : tb);
    };
    double fd = (th(a + h, b, 1) - th(a - h, b, 1)) / (2 * h) -
                (th(a, b + h, 0) - th(a, b - h, 0)) / (2 * h);
    CHECK(std::abs(fd - lhs) < 1e-6);
  }
}

TEST_CASE("integrand is finite at the fixed points and theta vanishes there") {
  double ta, tb;
  GeometryModel::theta(0, 0.0, 0.0, ta, tb);
  CHECK(ta == 0.0);
  CHECK(tb == 0.0);
  GeometryModel geo{2};
  for (double s : {0.0, 0.5, 1.0}) {
    Complex v = equivariant_integrand(geo, s, 0, 0.0, 0.0);
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
  }
}

TEST_CASE("s-dependence is smooth and matches the oracle slope at 0") {
  QuadratureConfig cfg;
  GeometryModel geo{1};
  double h = 1e-3;
  auto lhs = [&](double s) { return integrate(geo, s, cfg).value; };
  Complex slope = (lhs(h) - lhs(-h)) / (2.0 * h);
  CHECK(std::abs(slope - index_oracle_ds(1, 0.0)) < 1e-6);

  Complex second = (lhs(h) - 2.0 * lhs(0.0) + lhs(-h)) / (h * h);
  CHECK(std::abs(second) < 10.0);  // bounded second difference
}

TEST_CASE("s-sweep CSV reports smooth agreement over [0, 1]") {
  QuadratureConfig cfg;
  auto csv = s_sweep_csv(1, cfg, 1.0, 0.25);
  // header + 5 rows
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 6);
  // all rows agree to 1e-6 (parse the last column)
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    auto pos = line.rfind(',');
    double diff = std::stod(line.substr(pos + 1));
    CHECK(diff < 1e-6);
  }
}
