#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "detail/roots.hpp"
#include "dgh/fourier.hpp"
#include "dgh/period.hpp"
#include "dgh/spectral.hpp"
#include "support.hpp"

using namespace dgh;

namespace {

constexpr double kPi = std::numbers::pi;

// Symbol values of the constant-coefficient L on all n modes, sorted.
std::vector<double> constant_L_symbol(const ReducedParams& r, double q, int n, double Lz) {
  std::vector<double> s;
  for (int m = -n / 2 + 1; m <= n / 2; ++m) {
    double k = 2 * kPi * m / Lz;
    s.push_back((r.C1 - q) * k * k + (r.C1 - r.C2 - 3 * q));
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("Fourier matrices") {
  const int n = 32;
  const double L = 3.7;
  Eigen::MatrixXd D = fourier::diff1(n, L), J = fourier::jmat(n, L);
  CHECK((D + D.transpose()).cwiseAbs().maxCoeff() == 0);
  CHECK((J + J.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * J.cwiseAbs().maxCoeff());
  CHECK((J * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() <= 1e-14);
  Eigen::VectorXd v(n), dv(n);
  for (int j = 0; j < n; ++j) {
    double z = L * j / n;
    v(j) = std::sin(2 * kPi * z / L) + 0.3 * std::cos(6 * kPi * z / L);
    dv(j) = 2 * kPi / L * std::cos(2 * kPi * z / L) - 0.3 * 6 * kPi / L * std::sin(6 * kPi * z / L);
  }
  CHECK((D * v - dv).cwiseAbs().maxCoeff() < 1e-12);
  // J = -(1 - d^2)^{-1} d on a single mode
  Eigen::VectorXd s(n), js(n);
  double k = 2 * kPi * 3 / L;
  for (int j = 0; j < n; ++j) {
    double z = L * j / n;
    s(j) = std::sin(k * z);
    js(j) = -k / (1 + k * k) * std::cos(k * z);
  }
  CHECK((J * s - js).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("constant profile: operators from their symbols") {
  ReducedParams r{2, 1};
  Profile p = solve_profile(r, 3, -0.5, 32);
  SpectralOperator L = build_L(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.matrix);
  auto sym = constant_L_symbol(r, 1, 32, p.period_z);
  for (int i = 0; i < 32; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(sym[i]).epsilon(1e-10));

  InertiaCounts ic = inertia(L);
  int neg = std::count_if(sym.begin(), sym.end(), [&](double v) { return v < -ic.zero_tol; });
  CHECK(ic.n_neg == neg);

  SpectralOperator M = schrodinger_transform(p);
  double Q = (r.C1 - r.C2 - 3.0) / (r.C1 - 1.0);
  Eigen::MatrixXd expect = -fourier::diff2(32, p.period_z);
  expect.diagonal().array() += Q;
  CHECK((M.matrix - expect).cwiseAbs().maxCoeff() < 1e-12);

  SpectralOperator JL = build_JL(p);
  JLCheck chk = jl_spectrum_check(JL);
  CHECK(chk.stable);
  Eigen::EigenSolver<Eigen::MatrixXd> ev(JL.matrix, false);
  std::vector<double> im, want;
  for (int i = 0; i < 32; ++i) {
    CHECK(std::abs(ev.eigenvalues()(i).real()) <= 1e-10 * chk.tol / 1e-6);
    im.push_back(ev.eigenvalues()(i).imag());
  }
  for (int m = -15; m <= 16; ++m) {
    double k = 2 * kPi * m / p.period_z;
    double lam = (r.C1 - 1) * k * k + (r.C1 - r.C2 - 3);
    want.push_back(m == 16 ? 0.0 : -k * lam / (1 + k * k));
  }
  std::sort(im.begin(), im.end());
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 32; ++i) CHECK(std::abs(im[i] - want[i]) < 1e-9 * std::max(1.0, std::abs(want[i])));

  CHECK(constraint_invariance_check(p, 10) <= 1e-13);
}

TEST_CASE("self-duality and kernel of L") {
  ReducedParams r{2, 1};
  Profile p = solve_profile(r, 2, -1, 256);
  SpectralOperator L = build_L(p);
  CHECK(L.raw_asymmetry <= 1e-10);
  Eigen::VectorXd d = fourier::as_vector(p.dphi);
  CHECK((L.matrix * d).cwiseAbs().maxCoeff() <= 1e-6 * d.cwiseAbs().maxCoeff());

  InertiaCounts icM = inertia(schrodinger_transform(p));
  CHECK(icM.n_zero >= 1);
}

TEST_CASE("inertia follows the period slope") {
  ReducedParams r{2, 1};
  // dL/dC3 < 0
  Profile a = solve_profile(r, 2, -1, 256);
  CHECK(period_partials(r, 2, -1).dL_dC3 < 0);
  InertiaCounts ia = inertia(build_L(a));
  CHECK(ia.n_neg == 1);
  CHECK(ia.n_zero == 1);
  // dL/dC3 > 0 (b below b1)
  auto iv = c3_interval(r, -3);
  double C3 = 0.5 * (iv.lo + iv.hi);
  CHECK(period_partials(r, C3, -3).dL_dC3 > 0);
  InertiaCounts ib = inertia(build_L(solve_profile(r, C3, -3, 256)));
  CHECK(ib.n_neg == 2);
  CHECK(ib.n_zero == 1);
  InertiaCounts mb = inertia(schrodinger_transform(solve_profile(r, C3, -3, 256)));
  CHECK(mb.n_neg == 2);
  CHECK(mb.n_zero == 1);

  CHECK_CODE(inertia(build_JL(a)), ErrorCode::NotSymmetric);
  CHECK_CODE(build_L(peaked_profile(r, 2, 64)), ErrorCode::PeakedProfile);
}

TEST_CASE("theta index") {
  ReducedParams r{2, 1};
  Profile p = solve_profile(r, 2, -1, 256);
  double t1 = theta_index(p), t2 = theta_from_period(r, 2, -1);
  CHECK(t1 > 0);
  CHECK(rel_err(t1, t2) <= 1e-4);

  // at the interior maximum of L(C3) for b = -1.9 the index vanishes
  auto slope = [&](double c) { return period_partials(r, c, -1.9).dL_dC3; };
  double cstar = detail::bracketed_root(slope, 0.5, 0.65);
  Profile ps = solve_profile(r, cstar, -1.9, 256);
  CHECK(std::abs(theta_index(ps)) <= 1e-3);

  // where dL/dC3 = 0 the C3-derivative of the profile at fixed b is periodic
  // and spans the second kernel direction of L
  double h = 1e-5;
  Eigen::VectorXd v = (fourier::as_vector(solve_profile(r, cstar + h, -1.9, 256).phi) -
                       fourier::as_vector(solve_profile(r, cstar - h, -1.9, 256).phi)) / (2 * h);
  SpectralOperator L = build_L(ps);
  double scale = L.matrix.cwiseAbs().rowwise().sum().maxCoeff() * v.cwiseAbs().maxCoeff();
  CHECK((L.matrix * v).cwiseAbs().maxCoeff() <= 1e-4 * scale);
}

TEST_CASE("fixed-period curve") {
  ReducedParams r{2, 1};
  FixedPeriodPoint f = fixed_period_curve(r, 5, 3);
  CHECK(f.b > -0.5);
  CHECK(f.b < boundary_b(r, 3).b_plus);
  CHECK(boundary_b(r, 3).b_plus == doctest::Approx(-0.238).epsilon(1e-2));
  CHECK(std::abs(period(r, 3, f.b).L - 5) <= 1e-8);

  FixedPeriodPoint c = fixed_period_curve(r, center_limit_period(r, 3) * (1 + 1e-9), 3);
  CHECK(std::abs(c.b - boundary_b(r, 3).b_minus) < 1e-6);

  // C^1 in C3: db/dC3 = -(dL/dC3)/(dL/db)
  double h = 1e-4;
  double fd = (fixed_period_curve(r, 5, 3 + h).b - fixed_period_curve(r, 5, 3 - h).b) / (2 * h);
  auto pp = period_partials(r, 3, f.b);
  CHECK(std::abs(fd + pp.dL_dC3 / pp.dL_db) <= 1e-4 * std::max(1.0, std::abs(fd)));

  CHECK_CODE(fixed_period_curve(r, 1, 3), ErrorCode::PeriodUnreachable);
}

TEST_CASE("stability report at a Theorem-4 wave") {
  ReducedParams r{2, 1};
  StabilityReport s = stability_indices(r, expand(r, 1, 0), 3.0, 0.8);
  CHECK(s.b == doctest::Approx(-1.390425088).epsilon(1e-8));
  CHECK(s.dL_dC3 < 0);
  CHECK(s.dFM3_dC3 < 0);
  CHECK(s.n0 == 1);
  CHECK(s.z0 == 0);
  CHECK(s.n_constrained == 0);
  CHECK(s.z_constrained == 1);
  CHECK(s.n_constrained_direct == s.n_constrained);
  CHECK(s.z_constrained_direct == s.z_constrained);
  CHECK(s.spectral_verdict);
  CHECK(s.jl_stable);
  CHECK(s.kernel_residual <= 1e-6);
  CHECK(s.db_residual <= 1e-4);
  CHECK(s.dc_residual <= 1e-4);
  CHECK(s.criterion_sign_agrees);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(s.S[i][j] - s.S_direct[i][j]) <= 1e-6 * std::max(1.0, std::abs(s.S[i][j])));
  CHECK(s.theta == doctest::Approx(theta_from_period(r, 0.8, s.b)).epsilon(1e-4));
  // grid refinement leaves the spurious real parts at the same level
  CHECK(s.max_re_JL_2n <= 2 * s.max_re_JL + 1e-12 * s.jl_tol_2n / 1e-6);
  CHECK(s.max_re_JL <= 2 * s.max_re_JL_2n + 1e-12 * s.jl_tol / 1e-6);
}

TEST_CASE("constraint invariance of JL") {
  ReducedParams r{2, 1};
  Profile p = solve_profile(r, 2, -1, 128);
  CHECK(constraint_invariance_check(p, 20) <= 1e-8);
  SpectralOperator JL = build_JL(p);
  Eigen::VectorXd d = fourier::as_vector(p.dphi);
  CHECK((JL.matrix * d).cwiseAbs().maxCoeff() <= 1e-6 * d.cwiseAbs().maxCoeff());
}

TEST_CASE("orbital check") {
  ReducedParams r{2, 1};
  auto iv = c3_interval(r, -1.824320546123026);
  (void)iv;
  Profile p = solve_profile(r, 0.925925925925926, -1.824320546123026, 256);
  OrbitalCheck o = orbital_check(p, expand(r, 1, 0));
  CHECK(o.cond_b);
  CHECK(o.cond_sign);
  CHECK(o.cond_M);
  CHECK(o.cond_period);
  CHECK(o.LY_max_diff <= 1e-6);
  CHECK(rel_err(o.LYY, o.LYY_expansion) <= 1e-6);
  CHECK(o.LYY < 0);
  CHECK(o.verdict);

  ReducedParams r0{2, 0};
  auto bb = boundary_b(r0, 1);
  OrbitalCheck z = orbital_check(solve_profile(r0, 1, 0.5 * (bb.b_minus + bb.b_plus), 128), expand(r0, 1, 0));
  CHECK(!z.cond_sign);
  CHECK(z.sign_value == 0);
  CHECK(!z.verdict);
}
