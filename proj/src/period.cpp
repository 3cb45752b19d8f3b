#include "dgh/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail/parallel.hpp"
#include "detail/roots.hpp"
#include "dgh/errors.hpp"
#include "dgh/quadrature.hpp"

namespace dgh {

namespace {
constexpr double kPi = std::numbers::pi;
}

PeriodIntegrand::PeriodIntegrand(const OrbitGeometry& g)
    : geo(g), m(0.5 * (g.phi_plus + g.phi_minus)), rho(0.5 * (g.phi_plus - g.phi_minus)) {}

double PeriodIntegrand::operator()(double s) const {
  // 1 -/+ sin(s) written as 2 sin^2(pi/4 -/+ s/2) to keep the small gaps exact.
  double a = std::sin(0.25 * kPi - 0.5 * s);
  double c = std::sin(0.25 * kPi + 0.5 * s);
  double num = geo.gap_plus + 2 * rho * a * a;
  double den = geo.gap_minus + 2 * rho * c * c;
  return std::sqrt(num / den);
}

HalfPeriodMap::HalfPeriodMap(const PeriodIntegrand& g, double tol) : g_(g) {
  const double h = 0.5 * kPi;
  std::vector<double> left, right;
  auto grade = [&](double gap, std::vector<double>& out) {
    if (!(g_.rho > 0)) return;
    double eps = std::sqrt(2 * gap / g_.rho);
    if (gap == 0 || eps >= 0.1) return;
    for (double t = eps; t < 0.25 * kPi; t *= 2) out.push_back(t);
  };
  grade(g_.geo.gap_minus, left);
  grade(g_.geo.gap_plus, right);
  brk_.push_back(-h);
  for (double t : left) brk_.push_back(-h + t);
  std::vector<double> rr;
  for (double t : right) rr.push_back(h - t);
  std::reverse(rr.begin(), rr.end());
  brk_.insert(brk_.end(), rr.begin(), rr.end());
  brk_.push_back(h);
  const std::size_t np = brk_.size() - 1;

  std::vector<double> piece(np), prev(np);
  double prev_total = std::numeric_limits<double>::quiet_NaN();
  for (int n = 16;; n *= 2) {
    if (n > kMaxNodes) fail(ErrorCode::NonConvergent, "period quadrature did not converge");
    auto rule = gauss_legendre(n);
    double tot = 0;
    for (std::size_t k = 0; k < np; ++k) {
      piece[k] = integrate(g_, brk_[k], brk_[k + 1], *rule);
      tot += piece[k];
    }
    if (std::isfinite(prev_total) && std::abs(2 * (tot - prev_total)) <= tol) {
      n_ = n;
      total_ = tot;
      err_ = std::abs(2 * (tot - prev_total));
      nodes_ = n * static_cast<int>(np);
      break;
    }
    if (!std::isfinite(tot)) fail(ErrorCode::NonConvergent, "period integrand not finite");
    prev_total = tot;
  }
  tail_.assign(np + 1, 0.0);
  for (std::size_t k = np; k-- > 0;) tail_[k] = tail_[k + 1] + piece[k];
}

double HalfPeriodMap::z_of_s(double s) const {
  if (s <= brk_.front()) return total_;
  if (s >= brk_.back()) return 0;
  auto it = std::upper_bound(brk_.begin(), brk_.end(), s);
  std::size_t k = static_cast<std::size_t>(it - brk_.begin());  // s in [brk_[k-1], brk_[k])
  return tail_[k] + integrate(g_, s, brk_[k], *gauss_legendre(n_));
}

PeriodResult period(const ReducedParams& r, double C3, double b, double tol) {
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  RegionClass cls = region_classify(r, C3, b);
  if (cls != RegionClass::InteriorPeriodic)
    fail(ErrorCode::NoOrbit, "period needs an interior point; got " + std::string(to_string(cls)));
  HalfPeriodMap hp(PeriodIntegrand(orbit_geometry(r, C3, b)), tol);
  return {2 * hp.total(), hp.est_error(), hp.nodes_used()};
}

namespace {

double richardson(auto&& L, double x, double h, double& gap) {
  double d1 = (L(x + h) - L(x - h)) / (2 * h);
  double d2 = (L(x + 0.5 * h) - L(x - 0.5 * h)) / h;
  double rich = (4 * d2 - d1) / 3;
  gap = std::abs(rich - d2) / std::max(std::abs(rich), std::numeric_limits<double>::min());
  return rich;
}

}  // namespace

PeriodPartials period_partials(const ReducedParams& r, double C3, double b) {
  if (region_classify(r, C3, b) != RegionClass::InteriorPeriodic)
    fail(ErrorCode::NoOrbit, "period_partials needs an interior point");
  auto inside = [&](double c3, double bb) {
    return region_classify(r, c3, bb) == RegionClass::InteriorPeriodic;
  };
  const double tol = 1e-13;
  PeriodPartials out{};

  double hb = 1e-5 * std::max(1.0, std::abs(b));
  if (!inside(C3, b - hb) || !inside(C3, b + hb)) hb /= 10;
  if (!inside(C3, b - hb) || !inside(C3, b + hb))
    fail(ErrorCode::StencilLeavesRegion, "b stencil leaves the existence region");
  double hc = 1e-5 * std::max(1.0, std::abs(C3));
  if (!inside(C3 - hc, b) || !inside(C3 + hc, b)) hc /= 10;
  if (!inside(C3 - hc, b) || !inside(C3 + hc, b))
    fail(ErrorCode::StencilLeavesRegion, "C3 stencil leaves the existence region");

  out.h_b = hb;
  out.h_C3 = hc;
  out.dL_db = richardson([&](double x) { return period(r, C3, x, tol).L; }, b, hb, out.gap_b);
  out.dL_dC3 = richardson([&](double x) { return period(r, x, b, tol).L; }, C3, hc, out.gap_C3);
  return out;
}

double b1_threshold(const ReducedParams& r) {
  const double s6 = std::sqrt(6.0);
  return (-1 + s6 / 3) * r.C1 * r.C1 + (-1.5 + s6 / 3) * r.C1 * r.C2 +
         (-0.125 + s6 / 12) * r.C2 * r.C2;
}

CenterFrequency center_frequency(const ReducedParams& r, double C3) {
  double q = critical_roots(r, C3).phi2;  // throws OutOfRange outside (0, C3_crit)
  // Polish the gap g = C1 - phi2 on g^2 (2C1 + C2 - 2g) = C3 directly; the
  // subtraction loses relative accuracy as C3 -> 0.
  double g = r.C1 - q, K = 2 * r.C1 + r.C2;
  for (int i = 0; i < 3; ++i) {
    double h = g * g * (K - 2 * g) - C3, dh = 2 * g * K - 6 * g * g;
    if (dh == 0) break;
    g -= h / dh;
  }
  q = r.C1 - g;
  return {q, C3 / (g * g * g) - 1, (3 * q - r.C1 + r.C2) / g};
}

double center_limit_period(const ReducedParams& r, double C3) {
  CenterFrequency cf = center_frequency(r, C3);
  double g = r.C1 - cf.phi2;
  double scale = 1 + C3 / (g * g * g);
  if (std::abs(cf.omega_sq_direct - cf.omega_sq_param) > 1e-12 * scale)
    fail(ErrorCode::NonConvergent, "centre frequency formulas disagree");
  if (!(cf.omega_sq_param > 0)) fail(ErrorCode::OutOfRange, "centre frequency not positive");
  return 2 * kPi / std::sqrt(cf.omega_sq_param);
}

// b(L) = (C2^2 - 4 C1 C2)/8 - (2C1 + C2)^2 / (8 cosh^2(L/2)): the reference
// form rearranged with cosh L = 2 cosh^2(L/2) - 1 so it cannot overflow.
double peaked_b_of_L(const ReducedParams& r, double L) {
  if (!(L > 0)) fail(ErrorCode::OutOfRange, "peaked period must be positive");
  double s = 2 * r.C1 + r.C2;
  double ch = std::cosh(0.5 * L);
  return (r.C2 * r.C2 - 4 * r.C1 * r.C2) / 8 - s * s / (8 * ch * ch);
}

double peaked_dbdL(const ReducedParams& r, double L) {
  double s = 2 * r.C1 + r.C2;
  double ch = std::cosh(0.5 * L);
  return s * s * std::tanh(0.5 * L) / (8 * ch * ch);
}

double peaked_L_of_b(const ReducedParams& r, double b) {
  double lo = -0.5 * r.C1 * r.C1 - r.C1 * r.C2;
  double hi = (r.C2 * r.C2 - 4 * r.C1 * r.C2) / 8;
  if (!(b > lo && b < hi)) fail(ErrorCode::OutOfRange, "b outside the peaked edge");
  double s = 2 * r.C1 + r.C2;
  double ch2 = s * s / (8 * (hi - b));
  return 2 * std::acosh(std::sqrt(ch2));
}

namespace chicone {

double G(double x, double beta, double eta) {
  double bp = beta + 2;
  return -0.5 * (x * x + bp * x + bp * eta * eta / (x - eta) + bp * eta);
}

double R(double x, double beta, double eta) {
  return (4 * eta - beta - 2) * x * x * x + eta * (14 + 7 * beta - 12 * eta) * x * x +
         3 * eta * eta * (4 * eta - 6 - 3 * beta) * x +
         eta * eta * (beta * beta + 6 * eta - 4 * eta * eta + 4 * beta + 3 * beta * eta + 4);
}

double Wpp(double x, double beta, double eta) {
  double bp = beta + 2;
  double d = 2 * x * x + (bp - 4 * eta) * x + 2 * eta * (eta - bp);
  double d2 = d * d;
  return -12 * bp * (x - eta) * R(x, beta, eta) / (d2 * d2);
}

double S(double eta, double beta) {
  return 27 * beta * beta * beta + 2 * (81 + 92 * eta) * beta * beta +
         (324 + 736 * eta - 240 * eta * eta) * beta +
         8 * (27 + 92 * eta - 60 * eta * eta + 16 * eta * eta * eta);
}

double N(double beta, double eta) {
  double bp = beta + 2;
  return bp * (bp + 2 * eta) + (bp - 2 * eta) * std::sqrt(bp * (bp + 8 * eta));
}

}  // namespace chicone

ChiconeWitness chicone_witness(const ReducedParams& r, double C3, int n_samples) {
  if (n_samples < 2) fail(ErrorCode::InvalidArgument, "chicone_witness needs >= 2 samples");
  double Q = critical_roots(r, C3).phi2;
  if (std::abs(Q) < 1e-12) fail(ErrorCode::QZero, "phi2 = 0: the x = (phi - Q)/Q chart degenerates");
  ChiconeWitness w{};
  w.Q = Q;
  w.beta = r.C2 / Q;
  w.eta = (r.C1 - Q) / Q;
  w.n_samples = n_samples;
  const double bt = w.beta, et = w.eta, bp = bt + 2;
  double disc = bp * (bp + 8 * et);
  if (disc < 0) fail(ErrorCode::ComplexBranch, "maxima of G are complex");
  double sq = std::sqrt(disc);
  w.x1 = (4 * et - bp - sq) / 4;
  w.x3 = (4 * et - bp + sq) / 4;

  // x2: the other intersection of the level G = G(x1), between 0 and eta.
  const double h = chicone::G(w.x1, bt, et);
  auto F = [&](double x) { return chicone::G(x, bt, et) - h; };
  double a = std::min(0.0, et), c = std::max(0.0, et);
  double inner = et > 0 ? c : a;  // end at the pole
  double step = std::abs(et) * 1e-3;
  double probe = et > 0 ? inner - step : inner + step;
  for (int k = 0; k < 60 && (F(probe) < 0) == (F(et > 0 ? a : c) < 0); ++k) {
    step *= 0.5;
    probe = et > 0 ? inner - step : inner + step;
  }
  w.x2 = et > 0 ? detail::bracketed_root(F, a, probe) : detail::bracketed_root(F, probe, c);

  w.min_R_on_range = std::numeric_limits<double>::infinity();
  w.min_Wpp_on_range = std::numeric_limits<double>::infinity();
  const double lo = std::min(w.x1, w.x2), span = std::abs(w.x2 - w.x1);
  for (int k = 0; k < n_samples; ++k) {
    double xr = lo + span * k / (n_samples - 1);  // closed range for R
    w.min_R_on_range = std::min(w.min_R_on_range, chicone::R(xr, bt, et));
    double xw = lo + span * (k + 0.5) / n_samples;  // open range: W'' blows up at x1
    w.min_Wpp_on_range = std::min(w.min_Wpp_on_range, chicone::Wpp(xw, bt, et));
  }
  w.S_value = chicone::S(et, bt);
  w.N_value = chicone::N(bt, et);
  return w;
}

std::string_view to_string(ScanAxis a) { return a == ScanAxis::b ? "b" : "C3"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Increasing: return "Increasing";
    case Verdict::Decreasing: return "Decreasing";
    case Verdict::SingleMax: return "SingleMax";
    case Verdict::Violated: return "Violated";
  }
  return "Violated";
}

MonotonicityTable monotonicity_scan(const ReducedParams& r, ScanAxis axis, double fixed,
                                    const std::vector<double>& grid, double tol) {
  if (grid.size() < 3) fail(ErrorCode::InvalidArgument, "a monotonicity verdict needs >= 3 points");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) fail(ErrorCode::InvalidArgument, "scan grid must be strictly increasing");
  auto at = [&](double p) {
    return axis == ScanAxis::b ? WavePoint{fixed, p} : WavePoint{p, fixed};
  };
  for (double p : grid) {
    WavePoint w = at(p);
    RegionClass cls = region_classify(r, w.C3, w.b);
    if (cls != RegionClass::InteriorPeriodic)
      fail(ErrorCode::NoOrbit, "scan point outside the interior (" + std::string(to_string(cls)) + ")");
  }
  auto res = detail::parallel_map<PeriodResult>(grid.size(), [&](std::size_t i) {
    WavePoint w = at(grid[i]);
    return period(r, w.C3, w.b, tol);
  });

  MonotonicityTable t{axis, fixed, grid, {}, {}, Verdict::Violated,
                      std::numeric_limits<double>::infinity(), 0};
  for (auto& p : res) {
    t.L.push_back(p.L);
    t.est_error.push_back(p.est_error);
    t.max_est_error = std::max(t.max_est_error, p.est_error);
  }
  // Each difference must clear 10x the combined error estimate (floored at
  // tol) to count as a definite sign.
  std::vector<int> sg;
  for (std::size_t k = 0; k + 1 < res.size(); ++k) {
    double d = t.L[k + 1] - t.L[k];
    double thr = 10 * std::max(t.est_error[k] + t.est_error[k + 1], tol);
    t.min_abs_diff = std::min(t.min_abs_diff, std::abs(d));
    sg.push_back(d > thr ? 1 : (d < -thr ? -1 : 0));
  }
  bool all_up = std::all_of(sg.begin(), sg.end(), [](int s) { return s == 1; });
  bool all_dn = std::all_of(sg.begin(), sg.end(), [](int s) { return s == -1; });
  if (all_up) {
    t.verdict = Verdict::Increasing;
  } else if (all_dn) {
    t.verdict = Verdict::Decreasing;
  } else {
    // + ... + [0] - ... -, with at most one flat step right at the turn.
    std::size_t k = 0;
    while (k < sg.size() && sg[k] == 1) ++k;
    std::size_t ups = k;
    if (k < sg.size() && sg[k] == 0) ++k;
    std::size_t downs_from = k;
    while (k < sg.size() && sg[k] == -1) ++k;
    if (k == sg.size() && ups > 0 && downs_from < sg.size()) t.verdict = Verdict::SingleMax;
  }
  return t;
}

std::vector<double> scan_grid(const ReducedParams& r, ScanAxis axis, double fixed, int count) {
  if (count < 3) fail(ErrorCode::InvalidArgument, "a scan grid needs >= 3 points");
  std::vector<double> g(count);
  if (axis == ScanAxis::b) {
    BoundaryB bb = boundary_b(r, fixed);
    double span = bb.b_plus - bb.b_minus, d = 1e-3 * span;
    for (int k = 0; k < count; ++k) g[k] = bb.b_minus + d + (span - 2 * d) * k / (count - 1);
    return g;
  }
  C3Interval iv = c3_interval(r, fixed);
  if (!(iv.hi > iv.lo)) fail(ErrorCode::NoOrbit, "no interior C3 at this b");
  const double A = 5;
  for (int k = 0; k < count; ++k) {
    double t = static_cast<double>(k) / (count - 1);
    double u = 0.5 * (1 + std::tanh(A * (2 * t - 1)) / std::tanh(A) * (1 - 1e-4));
    g[k] = iv.lo + (iv.hi - iv.lo) * u;
  }
  return g;
}

}  // namespace dgh
