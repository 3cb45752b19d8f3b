#include "dgh/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "detail/roots.hpp"
#include "dgh/errors.hpp"
#include "dgh/fourier.hpp"
#include "dgh/period.hpp"

namespace dgh {

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm(const Eigen::MatrixXd& A) { return A.cwiseAbs().rowwise().sum().maxCoeff(); }

void require_smooth(const Profile& p, const char* who) {
  if (p.provenance == Provenance::PeakedClosedForm)
    fail(ErrorCode::PeakedProfile, std::string(who) + ": peaked profiles are not smooth");
}

void require_numeric(const Profile& p, const char* who) {
  require_smooth(p, who);
  if (p.provenance != Provenance::Numeric)
    fail(ErrorCode::InvalidArgument, std::string(who) + " needs a non-constant interior wave");
}

// Householder reflector H (symmetric, orthogonal) with H q = -+e_0.
Eigen::MatrixXd reflector(const Eigen::VectorXd& q) {
  const Eigen::Index n = q.size();
  Eigen::VectorXd v = q.normalized();
  v(0) += v(0) >= 0 ? 1.0 : -1.0;
  return Eigen::MatrixXd::Identity(n, n) - 2 * v * v.transpose() / v.squaredNorm();
}

std::array<double, 2> sym2_eigs(double a, double b, double d) {
  double m = 0.5 * (a + d), r = std::hypot(0.5 * (a - d), b);
  return {m - r, m + r};
}

}  // namespace

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::LinearizedL: return "LinearizedL";
    case OperatorKind::SchrodingerM: return "SchrodingerM";
    case OperatorKind::JL: return "JL";
  }
  return "LinearizedL";
}

Eigen::VectorXd profile_phi_dd(const Profile& p) {
  return fourier::derivative(fourier::as_vector(p.phi), p.period_z, 2);
}

SpectralOperator build_L(const Profile& p) {
  require_smooth(p, "build_L");
  const int n = p.n();
  const double Lz = p.period_z, C1 = p.params.C1, C2 = p.params.C2;
  Eigen::VectorXd phi = fourier::as_vector(p.phi);
  Eigen::VectorXd a = (C1 - phi.array()).matrix();
  Eigen::MatrixXd D = fourier::diff1(n, Lz);
  Eigen::VectorXd pdd = profile_phi_dd(p);

  Eigen::MatrixXd A = -D * a.asDiagonal() * D;
  SpectralOperator op{OperatorKind::LinearizedL, {}, Lz, {}, 0};
  op.raw_asymmetry = inf_norm(A - A.transpose()) / inf_norm(A);
  Eigen::MatrixXd L = 0.5 * (A + A.transpose());
  L.diagonal() += (C1 - C2 - 3 * phi.array() + pdd.array()).matrix();

  // D has no Nyquist component, so -D a D annihilates (-1)^j while the
  // continuous operator does not. Restore that mode with its leading-order
  // stiffness k_N^2 * mean(C1 - phi); resolved modes are untouched.
  Eigen::VectorXd nyq(n);
  for (int j = 0; j < n; ++j) nyq(j) = (j % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n));
  const double kN = kPi * n / Lz;
  L += kN * kN * a.mean() * nyq * nyq.transpose();

  op.matrix = std::move(L);
  Eigen::VectorXd k = fourier::as_vector(p.dphi);
  if (k.norm() > 0) op.kernel = k.normalized();
  return op;
}

SpectralOperator schrodinger_transform(const Profile& p) {
  require_smooth(p, "schrodinger_transform");
  const int n = p.n();
  const double C1 = p.params.C1, C2 = p.params.C2;
  Eigen::VectorXd pdd = profile_phi_dd(p);
  Eigen::VectorXd Q(n), kern(n);
  for (int j = 0; j < n; ++j) {
    double w = C1 - p.phi[j];
    if (!(w > 0)) fail(ErrorCode::SingularWeight, "C1 - phi must stay positive");
    double t = p.dphi[j] / w;
    Q(j) = (C1 - C2 - 3 * p.phi[j]) / w + pdd(j) / (2 * w) - 0.25 * t * t;
    kern(j) = std::sqrt(w) * p.dphi[j];
  }
  SpectralOperator op{OperatorKind::SchrodingerM, -fourier::diff2(n, p.period_z), p.period_z, {}, 0};
  op.matrix.diagonal() += Q;
  if (kern.norm() > 0) op.kernel = kern.normalized();
  return op;
}

SpectralOperator build_JL(const Profile& p) {
  SpectralOperator L = build_L(p);
  SpectralOperator op{OperatorKind::JL, fourier::jmat(p.n(), p.period_z) * L.matrix, p.period_z, {}, 0};
  return op;
}

InertiaCounts inertia(const SpectralOperator& op, std::optional<double> zero_tol) {
  if (op.kind == OperatorKind::JL) fail(ErrorCode::NotSymmetric, "inertia needs a self-adjoint operator");
  const Eigen::Index n = op.matrix.rows();
  InertiaCounts ic;
  ic.zero_tol = zero_tol ? *zero_tol : kZeroTolRel * inf_norm(op.matrix);

  Eigen::MatrixXd B;
  if (op.kernel.size() == n) {
    Eigen::MatrixXd H = reflector(op.kernel);
    B = (H * op.matrix * H).bottomRightCorner(n - 1, n - 1);
    ic.n_zero = 1;
  } else {
    B = op.matrix;
  }
  B = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::EigensolverFailure, "symmetric eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  ic.first_positive = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double l = ev(i);
    if (l < -ic.zero_tol) ++ic.n_neg;
    else if (l <= ic.zero_tol) ++ic.n_zero;
    else {
      if (ic.n_pos == 0) ic.first_positive = l;
      ++ic.n_pos;
    }
    if (i < 6) ic.lowest.push_back(l);
  }
  return ic;
}

double theta_index(const Profile& p) {
  require_numeric(p, "theta_index");
  const double C1 = p.params.C1, C2 = p.params.C2, C3 = p.C3;
  using State = std::array<double, 4>;  // phi, phi', v, v'
  auto rhs = [&](const State& x, State& dx, double) {
    double u = x[0], e = u - C1;
    double udd = u - (C3 - C1 * C1 * C2 - C2 * u * u + 2 * C1 * C2 * u) / (2 * e * e);
    double c = C1 - C2 - 3 * u + udd;
    dx[0] = x[1];
    dx[1] = udd;
    dx[2] = x[3];
    dx[3] = (x[1] * x[3] + c * x[2]) / (C1 - u);
  };
  namespace oi = boost::numeric::odeint;
  State x{p.phi[0], 0.0, 1.0, 0.0};
  try {
    auto stepper = oi::make_controlled(1e-10, 1e-10, oi::runge_kutta_dopri5<State>());
    oi::integrate_adaptive(stepper, rhs, x, 0.0, p.period_z, p.period_z / 1000);
  } catch (const std::exception& e) {
    fail(ErrorCode::IntegrationFailure, std::string("theta ODE: ") + e.what());
  }
  if (!std::isfinite(x[3])) fail(ErrorCode::IntegrationFailure, "theta ODE produced a non-finite value");
  return x[3];
}

double theta_from_period(const ReducedParams& r, double C3, double b) {
  PeriodPartials pp = period_partials(r, C3, b);
  double h = pp.h_C3;
  // gap_plus = C1 - phi_+ keeps full relative accuracy, so difference it.
  double gp = orbit_geometry(r, C3 + h, b).gap_plus;
  double gm = orbit_geometry(r, C3 - h, b).gap_plus;
  double g2p = orbit_geometry(r, C3 + 0.5 * h, b).gap_plus;
  double g2m = orbit_geometry(r, C3 - 0.5 * h, b).gap_plus;
  double d1 = -(gp - gm) / (2 * h), d2 = -(g2p - g2m) / h;
  double dphi_plus = (4 * d2 - d1) / 3;
  double phi_plus = orbit_geometry(r, C3, b).phi_plus;
  double phidd0 = -potential_dU(phi_plus, r, C3);
  return -pp.dL_dC3 / dphi_plus * phidd0;
}

JLCheck jl_spectrum_check(const SpectralOperator& op, std::optional<double> tol) {
  if (op.kind != OperatorKind::JL) fail(ErrorCode::InvalidArgument, "jl_spectrum_check needs a JL operator");
  JLCheck out{};
  out.tol = tol ? *tol : 1e-6 * inf_norm(op.matrix);
  Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::EigensolverFailure, "nonsymmetric eigensolver failed");
  out.max_abs_real = es.eigenvalues().real().cwiseAbs().maxCoeff();
  out.stable = out.max_abs_real <= out.tol;
  return out;
}

FixedPeriodPoint fixed_period_curve(const ReducedParams& r, double L_target, double C3, int N) {
  double crit = c3_critical(r);
  if (!(C3 > 0 && C3 < crit)) fail(ErrorCode::OutOfRange, "C3 outside (0, C3_critical)");
  const double Lm = center_limit_period(r, C3);
  if (!(L_target >= Lm))
    fail(ErrorCode::PeriodUnreachable, "target period below the centre limit at this C3");
  BoundaryB bb = boundary_b(r, C3);
  const double tol = 1e-13;
  auto F = [&](double b) {
    if (b - bb.b_minus <= 2 * kBoundaryTol) return Lm - L_target;
    return period(r, C3, b, tol).L - L_target;
  };
  if (L_target == Lm) return {bb.b_minus, solve_profile(r, C3, bb.b_minus, N)};

  const double span = bb.b_plus - bb.b_minus;
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k <= 14; ++k) {
    double cand = bb.b_plus - span * std::pow(10.0, -k);
    if (bb.b_plus - cand <= 2 * kBoundaryTol) break;
    if (F(cand) > 0) {
      hi = cand;
      break;
    }
  }
  if (std::isnan(hi)) fail(ErrorCode::PeriodUnreachable, "target period beyond the resolvable range");
  double b = detail::bracketed_root(F, bb.b_minus, hi);
  if (std::abs(F(b)) > 1e-8) fail(ErrorCode::NonConvergent, "fixed-period solve missed the target");
  return {b, solve_profile(r, C3, b, N)};
}

OrbitalCheck orbital_check(const Profile& p, const PhysicalParams& phys) {
  require_numeric(p, "orbital_check");
  const double C1 = p.params.C1, C2 = p.params.C2, b = p.b;
  OrbitalCheck o{};
  ConservedQuantities cq = conserved_quantities(p, phys);
  o.M = cq.M;
  o.dL_dC3 = period_partials(p.params, p.C3, b).dL_dC3;
  const double K = 2 * b + 0.5 * C2 * (C1 - C2), A = C1 + 0.5 * C2;
  o.sign_value = 0.5 * C2 * K;
  o.cond_b = b <= 0;
  o.cond_sign = o.sign_value < 0;
  o.cond_M = o.M > 0;
  o.cond_period = o.dL_dC3 < 0;

  SpectralOperator L = build_L(p);
  Eigen::VectorXd phi = fourier::as_vector(p.phi);
  Eigen::VectorXd Y = (phi.array() + 0.5 * C2).matrix();
  Eigen::VectorXd LY = L.matrix * Y;
  Eigen::VectorXd cf = (K - A * (phi - profile_phi_dd(p)).array()).matrix();
  o.LY_max_diff = (LY - cf).cwiseAbs().maxCoeff();

  const double dx = phys.alpha * p.dz(), Lx = phys.alpha * p.period_z;
  o.LYY = LY.dot(Y) * dx;
  o.LYY_expansion = (2 * b - 0.75 * C2 * C2) * cq.M + 0.5 * C2 * K * Lx - 2 * A * cq.E;
  o.LYY_expansion_verbatim = (2 * b - 0.75 * C2 * C2) * cq.M + 0.5 * C2 * K * Lx - A * cq.E;
  o.verdict = o.cond_b && o.cond_sign && o.cond_M && o.cond_period && o.LYY < 0;
  return o;
}

StabilityReport stability_indices(const ReducedParams& r, const PhysicalParams& phys, double L_target,
                                  double C3, const StabilityOptions& opt) {
  ReducedParams q = reduce(phys);
  if (std::abs(q.C1 - r.C1) > 1e-12 * std::max(1.0, std::abs(r.C1)) ||
      std::abs(q.C2 - r.C2) > 1e-12 * std::max(1.0, std::abs(r.C2)))
    fail(ErrorCode::ParamMismatch, "physical parameters do not reduce to (C1, C2)");

  StabilityReport rep{};
  rep.params = r;
  rep.physical = phys;
  rep.L_target = L_target;
  rep.C3 = C3;
  rep.grid_n = opt.n;

  FixedPeriodPoint base = fixed_period_curve(r, L_target, C3, opt.n);
  const Profile& p = base.profile;
  require_numeric(p, "stability_indices");
  rep.b = base.b;
  PeriodPartials pp = period_partials(r, C3, rep.b);
  rep.dL_dC3 = pp.dL_dC3;
  rep.dL_db = pp.dL_db;

  SpectralOperator L = build_L(p);
  rep.inertiaL = inertia(L);
  rep.inertiaM = inertia(schrodinger_transform(p));
  rep.theta = theta_index(p);

  auto on_curve = [&](const ReducedParams& rr, double c3) {
    try {
      return fixed_period_curve(rr, L_target, c3, opt.n);
    } catch (const DomainError& e) {
      fail(ErrorCode::StencilLeavesCurve, std::string("stencil off the fixed-period curve: ") + e.what());
    }
  };
  const double hc = opt.h_rel * std::max(1.0, std::abs(C3));
  const double h1 = opt.h_rel * std::max(1.0, std::abs(r.C1));
  rep.h_C3 = hc;
  rep.h_C1 = h1;
  FixedPeriodPoint cp = on_curve(r, C3 + hc), cm = on_curve(r, C3 - hc);
  FixedPeriodPoint up = on_curve({r.C1 + h1, r.C2}, C3), um = on_curve({r.C1 - h1, r.C2}, C3);

  const int n = opt.n;
  Eigen::VectorXd phi = fourier::as_vector(p.phi);
  auto vec = [](const Profile& x) { return fourier::as_vector(x.phi); };
  Eigen::VectorXd dbphi = (vec(cp.profile) - vec(cm.profile)) / (cp.b - cm.b);
  Eigen::VectorXd dC1phi = (vec(up.profile) - vec(um.profile)) / (2 * h1);
  double dbdC1 = (up.b - um.b) / (2 * h1);
  Eigen::VectorXd dcphi = dC1phi - dbdC1 * dbphi;

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd psi2 = phi - profile_phi_dd(p);
  Eigen::VectorXd dphi = fourier::as_vector(p.dphi);
  rep.kernel_residual = (L.matrix * dphi).cwiseAbs().maxCoeff() / dphi.cwiseAbs().maxCoeff();
  rep.db_residual = (L.matrix * dbphi - ones).cwiseAbs().maxCoeff();
  rep.dc_residual = (L.matrix * dcphi + psi2).cwiseAbs().maxCoeff();

  const double dx = phys.alpha * p.dz();
  rep.S[0][0] = dbphi.sum() * dx;
  rep.S[0][1] = -dcphi.sum() * dx;
  rep.S[1][0] = dbphi.dot(psi2) * dx;
  rep.S[1][1] = -dcphi.dot(psi2) * dx;
  rep.detS = rep.S[0][0] * rep.S[1][1] - rep.S[0][1] * rep.S[1][0];
  auto ev = sym2_eigs(rep.S[0][0], 0.5 * (rep.S[0][1] + rep.S[1][0]), rep.S[1][1]);
  double sn = std::max(std::abs(ev[0]), std::abs(ev[1]));
  rep.n0 = rep.z0 = 0;
  for (double l : ev) {
    if (std::abs(l) < 1e-8 * sn) ++rep.z0;
    else if (l < 0) ++rep.n0;
  }
  rep.n_constrained = rep.inertiaL.n_neg - rep.n0 - rep.z0;
  rep.z_constrained = rep.inertiaL.n_zero + rep.z0;

  {
    // Oracles from the eigen-decomposition of L itself: a pseudo-inverse for
    // S, and the inertia of L restricted to {1, phi - phi''}^perp.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.matrix);
    if (es.info() != Eigen::Success) fail(ErrorCode::EigensolverFailure, "symmetric eigensolver failed");
    const double tol = rep.inertiaL.zero_tol;
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXd inv = lam.unaryExpr([&](double l) { return std::abs(l) > tol ? 1 / l : 0.0; });
    const Eigen::MatrixXd& V = es.eigenvectors();
    auto solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
      return V * inv.cwiseProduct(V.transpose() * rhs);
    };
    Eigen::VectorXd x1 = solve(ones), x2 = solve(psi2);
    rep.S_direct[0][0] = x1.sum() * dx;
    rep.S_direct[0][1] = x2.sum() * dx;
    rep.S_direct[1][0] = x1.dot(psi2) * dx;
    rep.S_direct[1][1] = x2.dot(psi2) * dx;

    Eigen::MatrixXd C(n, 3);
    C << ones, psi2, dphi;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(C);
    Eigen::MatrixXd Qm = qr.householderQ();
    Eigen::MatrixXd Z = Qm.rightCols(n - 3);
    Eigen::MatrixXd B = Z.transpose() * L.matrix * Z;
    B = 0.5 * (B + B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(B, Eigen::EigenvaluesOnly);
    rep.n_constrained_direct = 0;
    rep.z_constrained_direct = 1;  // phi' lies in the constraint space
    for (Eigen::Index i = 0; i < eb.eigenvalues().size(); ++i) {
      double l = eb.eigenvalues()(i);
      if (l < -tol) ++rep.n_constrained_direct;
      else if (l <= tol) ++rep.z_constrained_direct;
    }
  }

  auto fm3 = [&](const Profile& x) {
    ConservedQuantities c = conserved_quantities(x, phys);
    return c.F / (c.M * c.M * c.M);
  };
  ConservedQuantities c0 = conserved_quantities(p, phys);
  rep.M_L = c0.M;
  rep.E_L = c0.E;
  rep.F_L = c0.F;
  rep.dFM3_dC3 = (fm3(cp.profile) - fm3(cm.profile)) / (2 * hc);
  rep.criterion_sign_agrees = (rep.detS < 0) == (rep.dFM3_dC3 < 0);

  JLCheck j1 = jl_spectrum_check(build_JL(p));
  rep.max_re_JL = j1.max_abs_real;
  rep.jl_tol = j1.tol;
  rep.jl_stable = j1.stable;
  rep.max_re_JL_2n = std::numeric_limits<double>::quiet_NaN();
  rep.jl_tol_2n = std::numeric_limits<double>::quiet_NaN();
  if (opt.check_2n) {
    JLCheck j2 = jl_spectrum_check(build_JL(solve_profile(r, C3, rep.b, 2 * n)));
    rep.max_re_JL_2n = j2.max_abs_real;
    rep.jl_tol_2n = j2.tol;
    rep.jl_stable = rep.jl_stable && j2.stable;
  }
  rep.spectral_verdict = rep.n_constrained == 0 && rep.z_constrained == 1;
  rep.orbital = orbital_check(p, phys);
  return rep;
}

double constraint_invariance_check(const Profile& p, int trials, std::uint64_t seed) {
  SpectralOperator L = build_L(p);
  Eigen::MatrixXd J = fourier::jmat(p.n(), p.period_z);
  const int n = p.n();
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd psi2 = fourier::as_vector(p.phi) - profile_phi_dd(p);
  psi2.normalize();
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) w(j) = nd(gen);
    w.normalize();
    Eigen::VectorXd Lw = L.matrix * w;
    double s = Lw.norm();
    if (s == 0) continue;
    Eigen::VectorXd y = J * Lw;
    worst = std::max({worst, std::abs(ones.dot(y)) / s, std::abs(psi2.dot(y)) / s});
  }
  return worst;
}

}  // namespace dgh
