#pragma once

// Fourier-collocation discretizations of the linearized operator L, its
// Schrodinger form M, and JL; eigenvalue counts, the theta index, the
// fixed-period curve and the stability indices built on them.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dgh/params.hpp"
#include "dgh/profile.hpp"

namespace dgh {

enum class OperatorKind { LinearizedL, SchrodingerM, JL };
std::string_view to_string(OperatorKind k);

struct SpectralOperator {
  OperatorKind kind;
  Eigen::MatrixXd matrix;
  double period_x;
  // Known kernel direction (empty if none is known); pinned by deflation.
  Eigen::VectorXd kernel;
  // max |A - A^T| / max |A| of the assembled matrix before symmetrizing.
  double raw_asymmetry = 0;
  int n() const { return static_cast<int>(matrix.rows()); }
};

// Default zero threshold relative to the max-abs-row-sum norm.
inline constexpr double kZeroTolRel = 1e-9;

struct InertiaCounts {
  int n_neg = 0, n_zero = 0, n_pos = 0;
  double zero_tol = 0;
  std::vector<double> lowest;  // a few smallest eigenvalues, deflated spectrum
  double first_positive = 0;   // smallest eigenvalue counted as positive
};

SpectralOperator build_L(const Profile& p);
SpectralOperator schrodinger_transform(const Profile& p);
SpectralOperator build_JL(const Profile& p);

// zero_tol absolute if given, else kZeroTolRel * ||A||_inf.
InertiaCounts inertia(const SpectralOperator& op, std::optional<double> zero_tol = {});

// Spectral second derivative of the profile (the phi'' entering L).
Eigen::VectorXd profile_phi_dd(const Profile& p);

// y1'(L) for L v = 0, v(0) = 1, v'(0) = 0, integrated over one period.
double theta_index(const Profile& p);
// The same quantity from -(dL/dC3)/(dphi_+/dC3) * phi''(0) with finite
// differences in C3 (independent of the ODE route).
double theta_from_period(const ReducedParams& r, double C3, double b);

struct JLCheck {
  double max_abs_real;
  bool stable;
  double tol;
};
JLCheck jl_spectrum_check(const SpectralOperator& op, std::optional<double> tol = {});

struct FixedPeriodPoint {
  double b;
  Profile profile;
};
FixedPeriodPoint fixed_period_curve(const ReducedParams& r, double L_target, double C3, int N = 256);

struct OrbitalCheck {
  bool cond_b, cond_sign, cond_M, cond_period;
  double sign_value;     // (C2/2)(2b + (C2/2)(C1 - C2))
  double M;
  double dL_dC3;
  double LYY;            // <LY, Y> by quadrature of the matrix-applied LY
  double LYY_expansion;  // closed-form expansion in M, E, L
  double LYY_expansion_verbatim;  // the expansion with E weighted by (C1 + C2/2)
  double LY_max_diff;    // max |L Y (matrix) - L Y (closed form)|
  bool verdict;
};
OrbitalCheck orbital_check(const Profile& p, const PhysicalParams& phys);

struct StabilityOptions {
  int n = 256;
  double h_rel = 1e-4;  // relative step for C3 and C1 stencils
  bool check_2n = true;
};

struct StabilityReport {
  ReducedParams params;
  PhysicalParams physical;
  double L_target, C3, b;
  int grid_n;
  double h_C3, h_C1;
  double theta;
  double dL_dC3, dL_db;
  InertiaCounts inertiaL, inertiaM;
  double S[2][2];
  double S_direct[2][2];  // <L^{-1} psi_i, psi_j> by a pseudo-inverse solve
  double detS;
  int n0, z0;
  int n_constrained, z_constrained;
  int n_constrained_direct, z_constrained_direct;  // projection oracle
  double M_L, E_L, F_L;
  double dFM3_dC3;
  bool criterion_sign_agrees;  // sign(detS) vs sign of -dFM3_dC3
  double kernel_residual;      // ||L phi'|| / ||phi'||
  double db_residual;          // ||L d_b phi - 1||
  double dc_residual;          // ||L d_c phi + (phi - phi'')||
  double max_re_JL, max_re_JL_2n;
  double jl_tol, jl_tol_2n;
  bool jl_stable;
  bool spectral_verdict;
  OrbitalCheck orbital;
};
StabilityReport stability_indices(const ReducedParams& r, const PhysicalParams& phys, double L_target,
                                  double C3, const StabilityOptions& opt = {});

double constraint_invariance_check(const Profile& p, int trials, std::uint64_t seed = 1);

}  // namespace dgh
