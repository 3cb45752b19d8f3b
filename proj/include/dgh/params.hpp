#pragma once

// Parameter algebra of the travelling-wave reduction and the geometry of the
// (C3, b) existence region. Everything here works in the z = x/alpha
// normalization, i.e. alpha has been scaled out.

#include <string_view>
#include <vector>

namespace dgh {

struct PhysicalParams {
  double alpha = 1.0;
  double omega = 0.0;
  double gamma = 0.0;
  double c = 0.0;
};

struct ReducedParams {
  double C1 = 0.0;
  double C2 = 0.0;
};

struct WavePoint {
  double C3 = 0.0;
  double b = 0.0;
};

// Roots of f(phi) = C3 ordered -C2/2 < phi1 < (C1-C2)/3 < phi2 < C1 < phi3.
struct CubicRoots {
  double phi1, phi2, phi3;
};

struct TurningPoints {
  double phi_minus, phi_plus;
};

enum class RegionClass {
  InteriorPeriodic,
  BoundaryCenter,
  BoundarySolitary,
  BoundaryPeaked,
  Outside,
};
std::string_view to_string(RegionClass c);

struct BoundaryB {
  double b_minus, b_plus;
};

// Absolute b-distance within which a point is tagged as lying on a boundary.
inline constexpr double kBoundaryTol = 1e-10;

ReducedParams reduce(const PhysicalParams& p);
PhysicalParams expand(const ReducedParams& r, double alpha, double gamma);

double f_eval(double phi, const ReducedParams& r);
double c3_critical(const ReducedParams& r);
CubicRoots critical_roots(const ReducedParams& r, double C3);

double potential_U(double phi, const ReducedParams& r, double C3);
double potential_dU(double phi, const ReducedParams& r, double C3);

// The cubic whose roots are r3 < phi_minus < phi_plus:
//   P(phi) = (C1 - phi)(2b + phi^2 + C2 phi + C1 C2) - C3 = 2 (C1 - phi)(b - U).
double turning_poly(double phi, const ReducedParams& r, double C3, double b);

TurningPoints turning_points(const ReducedParams& r, double C3, double b);

// Turning points plus the third root of P and the two small gaps that the
// period integrand needs to full relative accuracy.
struct OrbitGeometry {
  double phi_minus, phi_plus;
  double r3;
  double gap_plus;   // C1 - phi_plus
  double gap_minus;  // phi_minus - r3
};
OrbitGeometry orbit_geometry(const ReducedParams& r, double C3, double b);

BoundaryB boundary_b(const ReducedParams& r, double C3);
RegionClass region_classify(const ReducedParams& r, double C3, double b);

// Open C3-interval of interior points at fixed b (empty when lo >= hi).
struct C3Interval {
  double lo, hi;
};
C3Interval c3_interval(const ReducedParams& r, double b);

double g_classifier(const ReducedParams& r, double b);

struct GridSpec {
  double phi_min, phi_max;
  double phidot_min, phidot_max;
  int n_phi = 400;
};
struct PhasePoint {
  double phi, phidot;
};
std::vector<PhasePoint> level_set(const ReducedParams& r, double C3, double b,
                                  const GridSpec& grid);

}  // namespace dgh
