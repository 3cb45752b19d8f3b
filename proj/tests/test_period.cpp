#include <cmath>
#include <numbers>

#include "dgh/oracles.hpp"
#include "dgh/period.hpp"
#include "dgh/quadrature.hpp"
#include "support.hpp"

using namespace dgh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {16, 32, 64}) {
    auto g = gauss_legendre(n);
    for (int d = 0; d < 2 * n; d += 3) {
      double q = integrate([d](double x) { return std::pow(x, d); }, -1, 1, *g);
      double exact = d % 2 ? 0 : 2.0 / (d + 1);
      CHECK(std::abs(q - exact) < 1e-14);
    }
  }
}

TEST_CASE("period: frozen values and limits") {
  ReducedParams r{2, 1};
  auto p = period(r, 2, -1);
  CHECK(p.L == doctest::Approx(3.4536822705133865).epsilon(1e-12));
  CHECK(p.est_error < 1e-12);

  // centre: pi * sqrt(2)
  CHECK(std::abs(period(r, 3, -0.5 + 1e-8).L - kPi * std::sqrt(2.0)) < 1e-6);
  // peaked edge
  CHECK(std::abs(period(r, 1e-12, -2.1874).L - 2) < 1e-3);
  CHECK(std::abs(period(r, 1e-10, peaked_b_of_L(r, 2)).L - 2) < 1e-6);

  CHECK_CODE(period(r, 2, 0), ErrorCode::NoOrbit);
  CHECK_CODE(period(r, 3, -0.5), ErrorCode::NoOrbit);
}

TEST_CASE("period agrees with the shooting oracle") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0, 1);
  int n = 0;
  while (n < 30) {
    ReducedParams r{0.3 + 2.5 * u(g), -1 + 3 * u(g)};
    if (!(2 * r.C1 + r.C2 > 0.3)) continue;
    double C3 = (0.02 + 0.96 * u(g)) * c3_critical(r);
    auto bb = boundary_b(r, C3);
    double b = bb.b_minus + (0.01 + 0.98 * u(g)) * (bb.b_plus - bb.b_minus);
    ++n;
    CHECK(rel_err(period(r, C3, b).L, oracle::shooting_period(r, C3, b)) <= 1e-8);
  }
}

TEST_CASE("period diverges towards the solitary boundary") {
  ReducedParams r{2, 1};
  double bp = boundary_b(r, 2).b_plus, prev = 0;
  for (int k = 2; k <= 6; ++k) {
    double L = period(r, 2, bp - std::pow(10.0, -k)).L;
    CHECK(L > prev + 1);
    prev = L;
  }
}

TEST_CASE("period partials: signs of the period slopes") {
  ReducedParams r{2, 1};
  auto p = period_partials(r, 2, -1);
  CHECK(p.dL_db > 0);
  CHECK(p.dL_db == doctest::Approx(2.0696318780692).epsilon(1e-7));
  CHECK(p.dL_dC3 == doctest::Approx(-0.28858576284948).epsilon(1e-7));

  // independent central difference of the period itself
  double h = 1e-5;
  double fd = (period(r, 2, -1 + h, 1e-14).L - period(r, 2, -1 - h, 1e-14).L) / (2 * h);
  CHECK(std::abs(fd - p.dL_db) < 1e-6);

  auto iv = c3_interval(r, -3);
  CHECK(period_partials(r, 0.5 * (iv.lo + iv.hi), -3).dL_dC3 > 0);
  auto iv3 = c3_interval(r, -0.8);
  CHECK(period_partials(r, 0.5 * (iv3.lo + iv3.hi), -0.8).dL_dC3 < 0);
}

TEST_CASE("b1 threshold") {
  CHECK(b1_threshold({2, 1}) == doctest::Approx(-2.0218963692017127).epsilon(1e-14));
  CHECK(std::abs(b1_threshold({2, 1}) + 2.02190) < 1e-5);
  CHECK(b1_threshold({1, 0}) == doctest::Approx(-1 + std::sqrt(6.0) / 3).epsilon(1e-14));
  CHECK(b1_threshold({0, 1}) == doctest::Approx(-0.125 + std::sqrt(6.0) / 12).epsilon(1e-14));
  // C2 = 0 reduces to the Camassa-Holm value, which scales like c^2
  for (double c : {0.5, 2.0, 3.0}) CHECK(b1_threshold({c, 0}) == doctest::Approx(c * c * (-1 + std::sqrt(6.0) / 3)));
}

TEST_CASE("centre-limit period") {
  ReducedParams r{2, 1};
  CHECK(center_limit_period(r, 3) == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-14));
  auto cf = center_frequency(r, 3);
  CHECK(cf.omega_sq_direct == doctest::Approx(2).epsilon(1e-14));
  CHECK(cf.omega_sq_param == doctest::Approx(2).epsilon(1e-14));
  CHECK(center_limit_period(r, 1e-9) < 0.05);
  CHECK(center_limit_period(r, c3_critical(r) * (1 - 1e-12)) > 100);
  // L_-(C3) is increasing
  double prev = 0;
  for (int k = 1; k < 20; ++k) {
    double L = center_limit_period(r, c3_critical(r) * k / 20);
    CHECK(L > prev);
    prev = L;
  }
}

TEST_CASE("peaked family") {
  ReducedParams r{2, 1};
  CHECK(peaked_b_of_L(r, 2) == doctest::Approx(-2.1874198175438315).epsilon(1e-14));
  CHECK(std::abs(peaked_b_of_L(r, 2) + 2.18741) < 1e-5);
  CHECK(peaked_b_of_L(r, 1e-8) == doctest::Approx(-4).epsilon(1e-12));
  CHECK(peaked_b_of_L(r, 80) == doctest::Approx(-0.875).epsilon(1e-14));
  for (double L : {0.1, 1.0, 2.0, 5.0, 20.0}) {
    CHECK(peaked_L_of_b(r, peaked_b_of_L(r, L)) == doctest::Approx(L).epsilon(1e-9));
    double h = 1e-5;
    double fd = (peaked_b_of_L(r, L + h) - peaked_b_of_L(r, L - h)) / (2 * h);
    CHECK(peaked_dbdL(r, L) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(peaked_dbdL(r, L) > 0);
  }
  CHECK_CODE(peaked_L_of_b(r, -5), ErrorCode::OutOfRange);
}

TEST_CASE("Chicone witness") {
  ReducedParams r{2, 1};
  auto w = chicone_witness(r, 3);
  CHECK(w.Q == doctest::Approx(1).epsilon(1e-14));
  CHECK(w.beta == doctest::Approx(1).epsilon(1e-14));
  CHECK(w.eta == doctest::Approx(1).epsilon(1e-14));
  CHECK(w.min_R_on_range > 0);
  CHECK(w.min_Wpp_on_range > 0);
  CHECK(w.x1 < 0);
  CHECK(w.x2 > 0);
  CHECK(w.x2 < w.eta);
  CHECK(w.eta < w.x3);

  // 4 eta - beta - 2 = 0: R(x) = 8 eta^2 (2x^2 - 3 eta x + 3 eta^2)
  double eta = 0.75, beta = 4 * eta - 2;
  for (double x : {-2.0, -0.3, 0.0, 0.4, 1.7})
    CHECK(chicone::R(x, beta, eta) == doctest::Approx(8 * eta * eta * (2 * x * x - 3 * eta * x + 3 * eta * eta)));
  for (double b : {0.3, 1.0, 2.5})
    for (double e : {0.4, 1.0, 3.0}) CHECK(chicone::R(e, b, e) == doctest::Approx((2 + b) * (2 + b) * e * e));

  // phi2 = 0 when C3 = f(0) = C1^2 C2 with C2 > C1 > 0
  CHECK_CODE(chicone_witness({1, 2}, 2), ErrorCode::QZero);
}

TEST_CASE("Chicone consistency with the period slope") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0, 1);
  int n = 0;
  while (n < 10) {
    ReducedParams r{0.3 + 2.5 * u(g), -1 + 3 * u(g)};
    if (!(2 * r.C1 + r.C2 > 0.3)) continue;
    double C3 = (0.05 + 0.9 * u(g)) * c3_critical(r);
    if (!(critical_roots(r, C3).phi2 > 1e-3)) continue;
    auto w = chicone_witness(r, C3);
    if (!(w.min_Wpp_on_range > 0)) continue;
    ++n;
    auto bb = boundary_b(r, C3);
    for (double f : {0.1, 0.5, 0.9}) CHECK(period_partials(r, C3, bb.b_minus + f * (bb.b_plus - bb.b_minus)).dL_db > 0);
  }
}

TEST_CASE("monotonicity scans") {
  ReducedParams r{2, 1};
  auto t = monotonicity_scan(r, ScanAxis::b, 2, scan_grid(r, ScanAxis::b, 2, 50));
  CHECK(t.verdict == Verdict::Increasing);
  CHECK(t.L.size() == 50);
  auto s = monotonicity_scan(r, ScanAxis::C3, -1.5, scan_grid(r, ScanAxis::C3, -1.5, 50), 1e-13);
  CHECK(s.verdict == Verdict::SingleMax);
  CHECK_CODE(monotonicity_scan(r, ScanAxis::b, 2, {-1.0}), ErrorCode::InvalidArgument);
  CHECK_CODE(monotonicity_scan(r, ScanAxis::b, 2, {-1.0, -0.9, -0.95}), ErrorCode::InvalidArgument);
  CHECK_CODE(monotonicity_scan(r, ScanAxis::b, 2, {-1.0, -0.9, 0.0}), ErrorCode::NoOrbit);
}
