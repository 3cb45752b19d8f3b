#include "dgh/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dgh/errors.hpp"
#include "dgh/fourier.hpp"
#include "dgh/period.hpp"

namespace dgh {

namespace {
constexpr double kPi = std::numbers::pi;

void check_grid(int N) {
  if (N < 16 || N % 2 != 0) fail(ErrorCode::InvalidArgument, "profile grid size must be even and >= 16");
}

// Solve z(s) = z for s in (-pi/2, pi/2); z(s) decreases with dz/ds = -g(s).
double invert(const HalfPeriodMap& hp, double z, double guess) {
  double lo = -0.5 * kPi, hi = 0.5 * kPi;  // z(lo) >= z >= z(hi)
  double s = std::clamp(guess, lo, hi);
  const double ztol = 4e-16 * hp.total();
  for (int it = 0; it < 100; ++it) {
    double F = hp.z_of_s(s) - z;
    if (std::abs(F) <= ztol) return s;
    if (F > 0) lo = s; else hi = s;
    double sn = s + F / hp.integrand()(s);
    if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
    if (std::abs(sn - s) <= 1e-16 || hi - lo <= 1e-16) return sn;
    s = sn;
  }
  fail(ErrorCode::NonConvergent, "profile inversion z(s) = z did not converge");
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Numeric: return "Numeric";
    case Provenance::PeakedClosedForm: return "PeakedClosedForm";
    case Provenance::Constant: return "Constant";
  }
  return "Numeric";
}

Profile solve_profile(const ReducedParams& r, double C3, double b, int N) {
  check_grid(N);
  RegionClass cls = region_classify(r, C3, b);
  Profile p;
  p.params = r;
  p.C3 = C3;
  p.phi.assign(N, 0.0);
  p.dphi.assign(N, 0.0);

  if (cls == RegionClass::BoundaryCenter) {
    double q = critical_roots(r, C3).phi2;
    p.b = (r.C1 - r.C2 - 1.5 * q) * q;  // snap onto the boundary curve
    p.period_z = center_limit_period(r, C3);
    std::fill(p.phi.begin(), p.phi.end(), q);
    p.provenance = Provenance::Constant;
    return p;
  }
  if (cls != RegionClass::InteriorPeriodic)
    fail(ErrorCode::NoOrbit, "solve_profile needs an interior point; got " + std::string(to_string(cls)));

  OrbitGeometry geo = orbit_geometry(r, C3, b);
  HalfPeriodMap hp(PeriodIntegrand(geo), 1e-13);
  const PeriodIntegrand& g = hp.integrand();
  const double H = hp.total();
  p.b = b;
  p.period_z = 2 * H;
  p.provenance = Provenance::Numeric;

  p.phi[0] = geo.phi_plus;
  p.phi[N / 2] = geo.phi_minus;
  double s = 0.5 * kPi;
  for (int j = 1; j < N / 2; ++j) {
    double z = p.period_z * j / N;
    s = invert(hp, z, std::min(s, 0.5 * kPi - kPi * z / H));
    p.phi[j] = g.phi(s);
    p.dphi[j] = -g.rho * std::sin(0.5 * kPi - s) / g(s);
    p.phi[N - j] = p.phi[j];
    p.dphi[N - j] = -p.dphi[j];
  }
  return p;
}

Profile peaked_profile(const ReducedParams& r, double L, int N) {
  check_grid(N);
  Profile p;
  p.params = r;
  p.C3 = 0;
  p.b = peaked_b_of_L(r, L);
  p.period_z = L;
  p.provenance = Provenance::PeakedClosedForm;
  p.phi.assign(N, 0.0);
  p.dphi.assign(N, 0.0);
  const double A = r.C1 + 0.5 * r.C2, a = 0.5 * L;
  const double den = 1 + std::exp(-2 * a);
  for (int j = 0; j <= N / 2; ++j) {
    double z = L * j / N;  // distance to the crest
    // cosh(a - z)/cosh(a) and sinh(a - z)/cosh(a) without overflow
    double e = std::exp(-z);
    double ch = e * (1 + std::exp(-2 * (a - z))) / den;
    double sh = e * (1 - std::exp(-2 * (a - z))) / den;
    p.phi[j] = A * ch - 0.5 * r.C2;
    p.dphi[j] = -A * sh;
    if (j > 0 && j < N / 2) {
      p.phi[N - j] = p.phi[j];
      p.dphi[N - j] = -p.dphi[j];
    }
  }
  p.phi[0] = r.C1;
  p.dphi[0] = 0;  // corner: mean of the one-sided slopes
  p.dphi[N / 2] = 0;
  return p;
}

ConservedQuantities conserved_quantities(const Profile& p, const PhysicalParams& phys) {
  ReducedParams q = reduce(phys);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!close(q.C1, p.params.C1) || !close(q.C2, p.params.C2))
    fail(ErrorCode::ParamMismatch, "physical parameters do not reduce to the profile's (C1, C2)");
  const double al = phys.alpha, dx = al * p.dz();
  double M = 0, E = 0, F = 0;
  for (int j = 0; j < p.n(); ++j) {
    double u = p.phi[j], w = p.dphi[j];  // alpha^2 u_x^2 = w^2
    M += u;
    E += u * u + w * w;
    F += u * u * u + u * w * w + 2 * phys.omega * u * u - phys.gamma * w * w / (al * al);
  }
  return {M * dx, 0.5 * E * dx, 0.5 * F * dx, phys};
}

Residuals residual_check(const Profile& p) {
  const int n = p.n();
  const double C1 = p.params.C1, C2 = p.params.C2, b = p.b, C3 = p.C3;
  std::vector<double> d1(n), d2(n);
  if (p.provenance == Provenance::PeakedClosedForm) {
    const double h = p.dz();
    for (int j = 0; j < n; ++j) {
      auto w = [&](int k) { return p.dphi[((j + k) % n + n) % n]; };
      d1[j] = p.dphi[j];
      d2[j] = (w(-2) - 8 * w(-1) + 8 * w(1) - w(2)) / (12 * h);
    }
  } else {
    Eigen::VectorXd v = fourier::as_vector(p.phi);
    Eigen::VectorXd a = fourier::derivative(v, p.period_z, 1);
    Eigen::VectorXd c = fourier::derivative(v, p.period_z, 2);
    for (int j = 0; j < n; ++j) d1[j] = a(j), d2[j] = c(j);
  }
  Residuals out{0, 0, std::vector<double>(n)};
  for (int j = 0; j < n; ++j) {
    double u = p.phi[j], w = p.dphi[j];
    double r2 = (u - C1) * d2[j] + 0.5 * d1[j] * d1[j] + (C1 - C2 - 1.5 * u) * u - b;
    double r1 = (u - C1) * w * w + (C1 - C2) * u * u - u * u * u - 2 * b * u + C1 * (2 * b + C1 * C2) - C3;
    out.res2_pointwise[j] = std::abs(r2);
    out.res2 = std::max(out.res2, std::abs(r2));
    out.res1 = std::max(out.res1, std::abs(r1));
  }
  return out;
}

}  // namespace dgh
