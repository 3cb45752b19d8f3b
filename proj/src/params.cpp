#include "dgh/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "detail/roots.hpp"
#include "dgh/errors.hpp"

namespace dgh {

std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PoleAtC1: return "PoleAtC1";
    case ErrorCode::NoOrbit: return "NoOrbit";
    case ErrorCode::ComplexBranch: return "ComplexBranch";
    case ErrorCode::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::StencilLeavesRegion: return "StencilLeavesRegion";
    case ErrorCode::StencilLeavesCurve: return "StencilLeavesCurve";
    case ErrorCode::QZero: return "QZero";
    case ErrorCode::PeakedProfile: return "PeakedProfile";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::PeriodUnreachable: return "PeriodUnreachable";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) { throw DomainError(code, what); }

std::string_view to_string(RegionClass c) {
  switch (c) {
    case RegionClass::InteriorPeriodic: return "InteriorPeriodic";
    case RegionClass::BoundaryCenter: return "BoundaryCenter";
    case RegionClass::BoundarySolitary: return "BoundarySolitary";
    case RegionClass::BoundaryPeaked: return "BoundaryPeaked";
    case RegionClass::Outside: return "Outside";
  }
  return "Outside";
}

namespace {

std::string fmt_point(const ReducedParams& r, double C3, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "(C1=" << r.C1 << ", C2=" << r.C2 << ", C3=" << C3 << ", b=" << b << ")";
  return os.str();
}

void require_standing(const ReducedParams& r) {
  if (!(2 * r.C1 + r.C2 > 0))
    fail(ErrorCode::OutOfRange, "2*C1 + C2 must be positive");
}

// b on the critical-point curve: the constant solution phi = q of the
// second-order equation has b = (C1 - C2 - 3q/2) q.
double b_at_critical(const ReducedParams& r, double q) {
  return (r.C1 - r.C2 - 1.5 * q) * q;
}

}  // namespace

ReducedParams reduce(const PhysicalParams& p) {
  if (!(p.alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  double g = p.gamma / (p.alpha * p.alpha);
  return {p.c + g, 2 * p.omega + g};
}

PhysicalParams expand(const ReducedParams& r, double alpha, double gamma) {
  if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  double g = gamma / (alpha * alpha);
  return {alpha, (r.C2 - g) / 2, gamma, r.C1 - g};
}

double f_eval(double phi, const ReducedParams& r) {
  double d = phi - r.C1;
  return 2 * d * d * (phi + 0.5 * r.C2);
}

double c3_critical(const ReducedParams& r) {
  require_standing(r);
  double s = 2 * r.C1 + r.C2;
  return s * s * s / 27;
}

CubicRoots critical_roots(const ReducedParams& r, double C3) {
  double crit = c3_critical(r);
  if (!(C3 > 0 && C3 < crit))
    fail(ErrorCode::OutOfRange, "C3 outside (0, C3_critical): f(phi) = C3 has one real root");

  // With t = phi - m0 (inflection point) and d the half-distance between the
  // critical points of f, f = 2 t^3 - 6 d^2 t + 4 d^3, so t = 2d cos(theta)
  // with cos(3 theta) = C3 / (4 d^3) - 1.
  const double d = (2 * r.C1 + r.C2) / 6;
  const double m0 = (4 * r.C1 - r.C2) / 6;
  const double kappa = std::clamp(C3 / (4 * d * d * d) - 1, -1.0, 1.0);
  const double th = std::acos(kappa) / 3;
  constexpr double tp = 2 * std::numbers::pi / 3;
  double phi[3] = {m0 + 2 * d * std::cos(th + tp), m0 + 2 * d * std::cos(th + 2 * tp),
                   m0 + 2 * d * std::cos(th)};

  const double s = (r.C1 - r.C2) / 3;
  const double lo[3] = {-0.5 * r.C2, s, r.C1};
  const double hi[3] = {s, r.C1, r.C1 + d};
  const double tol = 1e-12 * std::max(1.0, std::abs(C3));
  auto h = [&](double x) { return f_eval(x, r) - C3; };

  for (int k = 0; k < 3; ++k) {
    double x = std::clamp(phi[k], lo[k], hi[k]);
    double res = std::abs(h(x));
    // Newton polish, kept only while it stays in the bracket and helps.
    for (int it = 0; it < 4 && res > 0; ++it) {
      double fp = 6 * (x - r.C1) * (x - s);
      if (fp == 0) break;
      double xn = x - h(x) / fp;
      if (!(xn > lo[k] && xn < hi[k])) break;
      double rn = std::abs(h(xn));
      if (!(rn < res)) break;
      x = xn;
      res = rn;
    }
    if (res > tol) x = detail::bisect(h, lo[k], hi[k]);
    phi[k] = x;
  }
  return {phi[0], phi[1], phi[2]};
}

double potential_U(double phi, const ReducedParams& r, double C3) {
  double base = -0.5 * phi * phi - 0.5 * r.C2 * phi - 0.5 * r.C1 * r.C2;
  if (C3 == 0) return base;
  if (phi == r.C1) fail(ErrorCode::PoleAtC1, "U has a pole at phi = C1");
  return base - C3 / (2 * (phi - r.C1));
}

double potential_dU(double phi, const ReducedParams& r, double C3) {
  double d = phi - r.C1;
  if (d == 0) {
    if (C3 != 0) fail(ErrorCode::PoleAtC1, "dU/dphi has a pole at phi = C1");
    return -phi - 0.5 * r.C2;
  }
  return (-f_eval(phi, r) + C3) / (2 * d * d);
}

double turning_poly(double phi, const ReducedParams& r, double C3, double b) {
  return (r.C1 - phi) * (2 * b + phi * phi + r.C2 * phi + r.C1 * r.C2) - C3;
}

OrbitGeometry orbit_geometry(const ReducedParams& r, double C3, double b) {
  RegionClass cls = region_classify(r, C3, b);
  switch (cls) {
    case RegionClass::InteriorPeriodic: {
      CubicRoots cr = critical_roots(r, C3);
      auto P = [&](double x) { return turning_poly(x, r, C3, b); };
      double pm = detail::bracketed_root(P, cr.phi1, cr.phi2);
      // Solve for the gap C1 - phi_plus directly so it keeps relative
      // accuracy when C3 is small and phi_plus crowds the pole.
      auto H = [&](double dl) {
        double x = r.C1 - dl;
        return dl * (2 * b + x * x + r.C2 * x + r.C1 * r.C2) - C3;
      };
      double gp = detail::bracketed_root(H, 0.0, r.C1 - cr.phi2);
      double pp = r.C1 - gp;
      double r3 = r.C1 - r.C2 - pm - pp;
      return {pm, pp, r3, gp, 2 * pm + r.C2 - gp};
    }
    case RegionClass::BoundaryCenter: {
      double q = critical_roots(r, C3).phi2;
      double r3 = r.C1 - r.C2 - 2 * q;
      return {q, q, r3, r.C1 - q, q - r3};
    }
    case RegionClass::BoundaryPeaked: {
      double disc = r.C2 * r.C2 - 4 * (2 * b + r.C1 * r.C2);
      double pm = 0.5 * (-r.C2 + std::sqrt(std::max(0.0, disc)));
      double r3 = -r.C2 - pm;
      return {pm, r.C1, r3, 0.0, pm - r3};
    }
    default:
      fail(ErrorCode::NoOrbit, "no periodic orbit at " + fmt_point(r, C3, b) + " (" +
                                   std::string(to_string(cls)) + ")");
  }
}

TurningPoints turning_points(const ReducedParams& r, double C3, double b) {
  OrbitGeometry g = orbit_geometry(r, C3, b);
  return {g.phi_minus, g.phi_plus};
}

BoundaryB boundary_b(const ReducedParams& r, double C3) {
  double crit = c3_critical(r);
  if (!(C3 >= 0 && C3 <= crit)) fail(ErrorCode::OutOfRange, "C3 outside [0, C3_critical]");
  if (C3 == 0)
    return {-0.5 * r.C1 * r.C1 - r.C1 * r.C2, (r.C2 * r.C2 - 4 * r.C1 * r.C2) / 8};
  if (C3 == crit) {
    double v = (r.C1 - r.C2) * (r.C1 - r.C2) / 6;
    return {v, v};
  }
  // Invert the critical-point parameterization C3(q) = (C1 - q)^2 (C2 + 2q)
  // on each monotone branch.
  const double s = (r.C1 - r.C2) / 3;
  auto c3_of = [&](double q) { return (r.C1 - q) * (r.C1 - q) * (r.C2 + 2 * q) - C3; };
  double q2 = detail::bisect(c3_of, s, r.C1);
  double q1 = detail::bisect(c3_of, -0.5 * r.C2, s);
  return {b_at_critical(r, q2), b_at_critical(r, q1)};
}

RegionClass region_classify(const ReducedParams& r, double C3, double b) {
  if (!(2 * r.C1 + r.C2 > 0) || !std::isfinite(C3) || !std::isfinite(b) ||
      !std::isfinite(r.C1) || !std::isfinite(r.C2))
    return RegionClass::Outside;
  double crit = c3_critical(r);
  if (C3 < 0 || C3 >= crit) return RegionClass::Outside;  // A3 is an excluded corner
  BoundaryB bb = boundary_b(r, C3);
  if (C3 == 0) {
    // The peaked edge is open: its end points A1, A2 are excluded corners.
    if (b > bb.b_minus + kBoundaryTol && b < bb.b_plus - kBoundaryTol)
      return RegionClass::BoundaryPeaked;
    return RegionClass::Outside;
  }
  if (std::abs(b - bb.b_minus) <= kBoundaryTol) return RegionClass::BoundaryCenter;
  if (std::abs(b - bb.b_plus) <= kBoundaryTol) return RegionClass::BoundarySolitary;
  if (b > bb.b_minus && b < bb.b_plus) return RegionClass::InteriorPeriodic;
  return RegionClass::Outside;
}

C3Interval c3_interval(const ReducedParams& r, double b) {
  require_standing(r);
  // Both boundary curves are b = (C1 - C2 - 3q/2) q, C3 = (C1 - q)^2 (C2 + 2q)
  // with q = phi2 (lower curve) or phi1 (upper curve).
  double disc = (r.C1 - r.C2) * (r.C1 - r.C2) - 6 * b;
  if (disc <= 0) return {0, 0};
  double sq = std::sqrt(disc);
  auto c3_of = [&](double q) { return (r.C1 - q) * (r.C1 - q) * (r.C2 + 2 * q); };
  double q2 = (r.C1 - r.C2 + sq) / 3;
  if (q2 >= r.C1) return {0, 0};  // b at or below b_-(0)
  double hi = c3_of(q2);
  double q1 = (r.C1 - r.C2 - sq) / 3;
  double lo = q1 > -0.5 * r.C2 ? c3_of(q1) : 0.0;
  return {lo, hi};
}

double g_classifier(const ReducedParams& r, double b) {
  double disc = (r.C1 - r.C2) * (r.C1 - r.C2) - 6 * b;
  if (disc < 0) fail(ErrorCode::ComplexBranch, "(C1 - C2)^2 - 6b < 0");
  return 12 * b + 2 * r.C1 * r.C1 - r.C2 * r.C2 + 8 * r.C1 * r.C2 -
         (2 * r.C1 + r.C2) * std::sqrt(disc);
}

std::vector<PhasePoint> level_set(const ReducedParams& r, double C3, double b,
                                  const GridSpec& grid) {
  if (!std::isfinite(grid.phi_min) || !std::isfinite(grid.phi_max) ||
      !std::isfinite(grid.phidot_min) || !std::isfinite(grid.phidot_max) ||
      !(grid.phi_min < grid.phi_max) || !(grid.phidot_min <= grid.phidot_max) || grid.n_phi < 2)
    fail(ErrorCode::InvalidArgument, "level_set: malformed grid window");

  auto P = [&](double x) { return turning_poly(x, r, C3, b); };
  auto in_window = [&](double x, double y) {
    return x >= grid.phi_min && x <= grid.phi_max && y >= grid.phidot_min && y <= grid.phidot_max;
  };
  std::vector<PhasePoint> upper, lower;

  // Points with phidot = 0: real roots of the cubic P, including double
  // roots (a centre or saddle) that a sign scan would miss.
  std::vector<double> zeros;
  const double h = (grid.phi_max - grid.phi_min) / (grid.n_phi - 1);
  auto xs = [&](int j) { return j + 1 == grid.n_phi ? grid.phi_max : grid.phi_min + j * h; };
  for (int j = 0; j + 1 < grid.n_phi; ++j) {
    double a = xs(j), c = xs(j + 1);
    double pa = P(a), pc = P(c);
    if (pa == 0) zeros.push_back(a);
    if ((pa < 0) != (pc < 0) && pa != 0 && pc != 0) zeros.push_back(detail::bracketed_root(P, a, c));
  }
  if (P(grid.phi_max) == 0) zeros.push_back(grid.phi_max);
  // Critical points of P: -3x^2 + 2(C1 - C2)x - 2b = 0.
  double A = -3, B = 2 * (r.C1 - r.C2), C = -2 * b;
  double disc = B * B - 4 * A * C;
  if (disc >= 0) {
    double sq = std::sqrt(disc);
    for (double x : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
      double scale = 1 + std::abs(C3) + std::abs(b) + x * x * (std::abs(x) + 1);
      if (x >= grid.phi_min && x <= grid.phi_max && std::abs(P(x)) <= 1e-13 * scale)
        zeros.push_back(x);
    }
  }
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end(),
                          [](double a, double c) { return std::abs(a - c) <= 1e-12 * (1 + std::abs(a)); }),
              zeros.end());
  for (double z : zeros)
    if (z != r.C1 && in_window(z, 0.0)) upper.push_back({z, 0.0});

  for (int j = 0; j < grid.n_phi; ++j) {
    double x = xs(j);
    if (x == r.C1) continue;
    double v = P(x) / (r.C1 - x);
    if (!(v > 0)) continue;
    bool near_zero = std::any_of(zeros.begin(), zeros.end(),
                                 [&](double z) { return std::abs(z - x) <= 1e-12 * (1 + std::abs(z)); });
    if (near_zero) continue;
    double y = std::sqrt(v);
    if (in_window(x, y)) upper.push_back({x, y});
    if (in_window(x, -y)) lower.push_back({x, -y});
  }
  if (upper.empty() && lower.empty())
    fail(ErrorCode::EmptyLevelSet, "no real branch of the level curve meets the window");

  auto by_phi = [](const PhasePoint& a, const PhasePoint& c) { return a.phi < c.phi; };
  std::sort(upper.begin(), upper.end(), by_phi);
  std::sort(lower.begin(), lower.end(), by_phi);
  upper.insert(upper.end(), lower.begin(), lower.end());
  return upper;
}

}  // namespace dgh
