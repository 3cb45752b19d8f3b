#include <algorithm>
#include <cmath>

#include "dgh/oracles.hpp"
#include "dgh/params.hpp"
#include "support.hpp"

using namespace dgh;

namespace {

// Independent root finder for f(phi) = C3 on a bracket (plain bisection on the
// expanded cubic), used to freeze reference roots.
double bisect_f(const ReducedParams& r, double C3, double lo, double hi) {
  auto g = [&](double x) { return (r.C1 - x) * (r.C1 - x) * (r.C2 + 2 * x) - C3; };
  double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (lo + hi);
    if ((g(m) < 0) == (glo < 0)) lo = m, glo = g(m);
    else hi = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("reduce and expand") {
  auto r = reduce({1, 0.5, 0, 2});
  CHECK(r.C1 == 2);
  CHECK(r.C2 == 1);
  r = reduce({1, 0, 0, 0});
  CHECK(r.C1 == 0);
  CHECK(r.C2 == 0);
  r = reduce({2, 1, 4, 1});
  CHECK(r.C1 == 2);
  CHECK(r.C2 == 3);

  auto p = expand({2, 1}, 1, 0);
  CHECK(p.c == 2);
  CHECK(p.omega == 0.5);
  p = expand({0, 0}, 1, 0);
  CHECK(p.c == 0);
  CHECK(p.omega == 0);
  p = expand({2, 3}, 2, 4);
  CHECK(p.c == doctest::Approx(1).epsilon(1e-15));
  CHECK(p.omega == doctest::Approx(1).epsilon(1e-15));

  CHECK_CODE(reduce({0, 1, 1, 1}), ErrorCode::InvalidArgument);
}

TEST_CASE("f and the critical level") {
  ReducedParams r{2, 1};
  CHECK(f_eval(2, r) == 0);
  CHECK(f_eval(-0.5, r) == 0);
  CHECK(f_eval(1.0 / 3, r) == doctest::Approx(125.0 / 27).epsilon(1e-15));
  CHECK(c3_critical(r) == doctest::Approx(125.0 / 27).epsilon(1e-15));
  CHECK(c3_critical({0.5, 0}) == doctest::Approx(1.0 / 27).epsilon(1e-15));
  CHECK(c3_critical({3, 3}) == doctest::Approx(27).epsilon(1e-15));
}

TEST_CASE("critical roots") {
  ReducedParams r{2, 1};
  auto c = critical_roots(r, 2);
  // frozen from the bisection oracle
  CHECK(c.phi1 == doctest::Approx(-0.31309903426364682).epsilon(1e-13));
  CHECK(c.phi2 == doctest::Approx(1.2424309764359647).epsilon(1e-13));
  CHECK(c.phi3 == doctest::Approx(2.5706680578276822).epsilon(1e-13));
  CHECK(std::abs(c.phi1 - bisect_f(r, 2, -0.5, 1.0 / 3)) < 1e-13);
  CHECK(std::abs(c.phi2 - bisect_f(r, 2, 1.0 / 3, 2)) < 1e-13);
  CHECK(std::abs(c.phi3 - bisect_f(r, 2, 2, 10)) < 1e-13);
  CHECK(c.phi1 + c.phi2 + c.phi3 == doctest::Approx(3.5).epsilon(1e-14));

  CHECK(critical_roots(r, 3).phi2 == doctest::Approx(1).epsilon(1e-15));

  auto n = critical_roots(r, 125.0 / 27 * (1 - 1e-12));
  CHECK(std::abs(n.phi1 - 1.0 / 3) < 1e-5);
  CHECK(std::abs(n.phi2 - 1.0 / 3) < 1e-5);
  CHECK(n.phi1 < n.phi2);

  CHECK_CODE(critical_roots(r, 6), ErrorCode::OutOfRange);
  CHECK_CODE(critical_roots(r, -1), ErrorCode::OutOfRange);
}

TEST_CASE("root ordering on random parameters") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-3, 3), t(0, 1);
  int n = 0;
  while (n < 10000) {
    ReducedParams r{u(g), u(g)};
    if (!(2 * r.C1 + r.C2 > 0)) continue;
    double C3 = t(g) * c3_critical(r);
    if (!(C3 > 0 && C3 < c3_critical(r))) continue;
    ++n;
    auto c = critical_roots(r, C3);
    double s = (r.C1 - r.C2) / 3;
    REQUIRE(-0.5 * r.C2 < c.phi1);
    REQUIRE(c.phi1 < s);
    REQUIRE(s < c.phi2);
    REQUIRE(c.phi2 < r.C1);
    REQUIRE(r.C1 < c.phi3);
    double tol = 1e-12 * std::max(1.0, C3);
    REQUIRE(std::abs(f_eval(c.phi1, r) - C3) <= tol);
    REQUIRE(std::abs(f_eval(c.phi2, r) - C3) <= tol);
    REQUIRE(std::abs(f_eval(c.phi3, r) - C3) <= tol);
  }
}

TEST_CASE("potential") {
  ReducedParams r{2, 1};
  double q = critical_roots(r, 2).phi2;
  CHECK(potential_U(q, r, 2) == doctest::Approx(-1.0730211203754723).epsilon(1e-13));
  CHECK(potential_U(q, r, 2) == doctest::Approx(boundary_b(r, 2).b_minus).epsilon(1e-13));
  CHECK(potential_U(0, {2, 1}, 0) == doctest::Approx(-1).epsilon(1e-15));
  CHECK(potential_U(0, {-1.5, 3.5}, 0) == doctest::Approx(1.5 * 3.5 / 2).epsilon(1e-15));
  CHECK(std::abs(potential_dU(q, r, 2)) < 1e-13);
  CHECK_CODE(potential_U(2, r, 2), ErrorCode::PoleAtC1);
}

TEST_CASE("turning points") {
  ReducedParams r{2, 1};
  auto t = turning_points(r, 0, -2.1874);
  CHECK(t.phi_plus == 2);
  CHECK(t.phi_minus == doctest::Approx((-1 + std::sqrt(1 - 4 * (2 * -2.1874 + 2))) / 2).epsilon(1e-14));
  // the trough of the peaked wave of period 2
  CHECK(t.phi_minus == doctest::Approx(2.5 / std::cosh(1.0) - 0.5).epsilon(1e-4));

  t = turning_points(r, 3, -0.5);
  CHECK(t.phi_minus == doctest::Approx(1).epsilon(1e-12));
  CHECK(t.phi_plus == doctest::Approx(1).epsilon(1e-12));

  t = turning_points(r, 2, -1);
  auto o = oracle::bisection_turning_points(r, 2, -1);
  CHECK(std::abs(t.phi_minus - o.phi_minus) <= 1e-10);
  CHECK(std::abs(t.phi_plus - o.phi_plus) <= 1e-10);
  double q = critical_roots(r, 2).phi2;
  CHECK(t.phi_minus < q);
  CHECK(q < t.phi_plus);
  CHECK(std::abs(potential_U(t.phi_minus, r, 2) + 1) <= 1e-10);
  CHECK(std::abs(potential_U(t.phi_plus, r, 2) + 1) <= 1e-10);

  CHECK_CODE(turning_points(r, 2, 0), ErrorCode::NoOrbit);
  CHECK_CODE(turning_points(r, 2, -2), ErrorCode::NoOrbit);
}

TEST_CASE("turning points in the degenerate limits") {
  ReducedParams r{2, 1};
  for (double C3 : {0.5, 2.0, 4.0}) {
    auto c = critical_roots(r, C3);
    auto bb = boundary_b(r, C3);
    auto lo = turning_points(r, C3, bb.b_minus + 1e-10);
    CHECK(std::abs(lo.phi_minus - c.phi2) < 1e-4);
    CHECK(std::abs(lo.phi_plus - c.phi2) < 1e-4);
    auto hi = turning_points(r, C3, bb.b_plus - 1e-9);
    CHECK(std::abs(hi.phi_minus - c.phi1) < 1e-3);
  }
}

TEST_CASE("boundary curves") {
  ReducedParams r{2, 1};
  auto b0 = boundary_b(r, 0);
  CHECK(b0.b_minus == doctest::Approx(-4).epsilon(1e-14));
  CHECK(b0.b_plus == doctest::Approx(-0.875).epsilon(1e-14));
  auto bc = boundary_b(r, c3_critical(r));
  CHECK(bc.b_minus == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(bc.b_plus == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(boundary_b(r, 3).b_minus == doctest::Approx(-0.5).epsilon(1e-14));
  auto b2 = boundary_b(r, 2);
  CHECK(b2.b_minus == doctest::Approx(-1.0730211203754723).epsilon(1e-13));
  CHECK(b2.b_plus == doctest::Approx(-0.46014554214888925).epsilon(1e-13));
}

TEST_CASE("boundary curves are increasing in C3") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    ReducedParams r{0.3 + 2.5 * u(g), -1 + 3 * u(g)};
    if (!(2 * r.C1 + r.C2 > 0.2)) continue;
    double crit = c3_critical(r);
    double a = u(g) * crit, b = u(g) * crit;
    if (a > b) std::swap(a, b);
    if (!(b - a > 1e-6 * crit)) continue;
    auto A = boundary_b(r, a), B = boundary_b(r, b);
    CHECK(A.b_minus < B.b_minus);
    CHECK(A.b_plus < B.b_plus);
  }
}

TEST_CASE("slope of the lower boundary") {
  ReducedParams r{2, 1};
  for (double C3 : {0.5, 1.5, 3.0, 4.2}) {
    double h = 1e-5;
    double db = boundary_b(r, C3 + h).b_minus - boundary_b(r, C3 - h).b_minus;
    double slope = 2 * h / db;  // dC3/db
    double q = critical_roots(r, C3).phi2;
    CHECK(std::abs(slope - 2 * (r.C1 - q)) <= 1e-6 * std::max(1.0, slope));
  }
}

TEST_CASE("region classification") {
  ReducedParams r{2, 1};
  CHECK(region_classify(r, 2, -1) == RegionClass::InteriorPeriodic);
  CHECK(region_classify(r, 0, -2) == RegionClass::BoundaryPeaked);
  CHECK(region_classify(r, 6, 0) == RegionClass::Outside);
  CHECK(region_classify(r, 3, -0.5) == RegionClass::BoundaryCenter);
  CHECK(region_classify(r, 2, boundary_b(r, 2).b_plus) == RegionClass::BoundarySolitary);
  CHECK(region_classify(r, 1e-12, -2) == RegionClass::InteriorPeriodic);
  // corners are excluded
  CHECK(region_classify(r, 0, -4) == RegionClass::Outside);
  CHECK(region_classify(r, 0, -0.875) == RegionClass::Outside);
  CHECK(region_classify(r, c3_critical(r), 1.0 / 6) == RegionClass::Outside);
}

TEST_CASE("classification agrees with turning points") {
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    ReducedParams r{0.3 + 2.5 * u(g), -1 + 3 * u(g)};
    if (!(2 * r.C1 + r.C2 > 0.2)) continue;
    double C3 = u(g) * 1.2 * c3_critical(r);
    double b = -5 + 6 * u(g);
    bool interior = region_classify(r, C3, b) == RegionClass::InteriorPeriodic;
    bool orbit = false;
    try {
      auto t = turning_points(r, C3, b);
      orbit = t.phi_minus < t.phi_plus;
    } catch (const DomainError&) {
    }
    CHECK(interior == orbit);
  }
}

TEST_CASE("C3 interval at fixed b") {
  ReducedParams r{2, 1};
  auto iv = c3_interval(r, -1);
  CHECK(region_classify(r, 0.5 * (iv.lo + iv.hi), -1) == RegionClass::InteriorPeriodic);
  CHECK(boundary_b(r, iv.hi).b_minus == doctest::Approx(-1).epsilon(1e-12));
  CHECK(iv.lo == 0);
  auto iv2 = c3_interval(r, -0.8);
  CHECK(iv2.lo > 0);
  CHECK(boundary_b(r, iv2.lo).b_plus == doctest::Approx(-0.8).epsilon(1e-12));
  auto e = c3_interval(r, 1);
  CHECK(!(e.hi > e.lo));
}

TEST_CASE("g classifier") {
  // printed to 5-6 significant digits
  CHECK(g_classifier({3, 1.02}, -1) == doctest::Approx(7.32894).epsilon(5e-6));
  CHECK(g_classifier({2.01, 0.03}, -1) == doctest::Approx(-16.1944).epsilon(5e-6));
  CHECK(std::abs(g_classifier({3, 3}, -27.0 / 8)) < 1e-12);
}

TEST_CASE("level sets") {
  ReducedParams r{2, 1};
  GridSpec w{-1, 3, -3, 3, 401};
  auto c = level_set(r, 3, -0.5, w);
  // the centre collapses to a single point
  bool has_center = std::any_of(c.begin(), c.end(), [](const PhasePoint& p) {
    return std::abs(p.phi - 1) < 1e-6 && std::abs(p.phidot) < 1e-6;
  });
  CHECK(has_center);
  for (const auto& p : c)
    if (std::abs(p.phi - 1) < 0.3) CHECK(std::abs(p.phidot) < 1e-6);

  auto o = level_set(r, 2, -1, w);
  auto t = turning_points(r, 2, -1);
  bool at_plus = std::any_of(o.begin(), o.end(), [&](const PhasePoint& p) {
    return std::abs(p.phi - t.phi_plus) < 1e-12 && p.phidot == 0;
  });
  CHECK(at_plus);
  for (const auto& p : o) {
    double lhs = 0.5 * p.phidot * p.phidot * (r.C1 - p.phi);
    CHECK(std::abs(lhs - 0.5 * turning_poly(p.phi, r, 2, -1)) < 1e-10);
  }

  auto f = level_set({3, 1.02}, 3, -1, {-2, 5, -3, 3, 400});
  CHECK(f.size() > 10);

  CHECK_CODE(level_set(r, 2, -1, {1, 0, -1, 1, 10}), ErrorCode::InvalidArgument);
}
