#pragma once

// The period function L(C1, C2, C3, b) in z-units, its derivatives and limits,
// and sampled witnesses for its monotonicity.

#include <cmath>
#include <string_view>
#include <vector>

#include "dgh/params.hpp"

namespace dgh {

struct PeriodResult {
  double L;
  double est_error;
  int nodes_used;
};

inline constexpr double kPeriodTol = 1e-12;
inline constexpr int kMaxNodes = 1 << 14;

// L = 2 * integral over (phi_-, phi_+) of dphi / sqrt(2 (b - U)), evaluated
// after phi = m + rho sin(s), which leaves the analytic integrand
// sqrt((C1 - phi) / (phi - r3)) on s in [-pi/2, pi/2].
PeriodResult period(const ReducedParams& r, double C3, double b, double tol = kPeriodTol);

// Same substitution, exposed for profile reconstruction.
struct PeriodIntegrand {
  OrbitGeometry geo;
  double m, rho;
  double operator()(double s) const;       // sqrt((C1 - phi(s)) / (phi(s) - r3))
  double phi(double s) const { return m + rho * std::sin(s); }
  explicit PeriodIntegrand(const OrbitGeometry& g);
};

// Composite Gauss-Legendre for the transformed integrand. Near the peaked
// (C1 - phi_+ -> 0) and solitary (phi_- - r3 -> 0) edges the integrand has a
// near-singularity at distance ~sqrt(gap/rho) from an end point, so panels are
// graded geometrically towards that end. Nodes per panel double from 16 until
// two successive totals agree within tol.
class HalfPeriodMap {
 public:
  HalfPeriodMap(const PeriodIntegrand& g, double tol);
  // Integral of g over [-pi/2, pi/2] (= L/2).
  double total() const { return total_; }
  double est_error() const { return err_; }
  int nodes_used() const { return nodes_; }
  // z(s) = integral of g over [s, pi/2]; decreasing from L/2 to 0.
  double z_of_s(double s) const;
  const PeriodIntegrand& integrand() const { return g_; }

 private:
  PeriodIntegrand g_;
  std::vector<double> brk_;   // panel breakpoints, increasing
  std::vector<double> tail_;  // tail_[k] = integral over [brk_[k], pi/2]
  int n_ = 16;
  double total_ = 0, err_ = 0;
  int nodes_ = 0;
};

struct PeriodPartials {
  double dL_db, dL_dC3;
  double h_b, h_C3;
  // Relative change between the two Richardson levels; reported, not enforced.
  double gap_b, gap_C3;
};
PeriodPartials period_partials(const ReducedParams& r, double C3, double b);

double b1_threshold(const ReducedParams& r);

// Both expressions for the small-oscillation frequency at the centre phi2.
struct CenterFrequency {
  double phi2;
  double omega_sq_direct;  // C3 / (C1 - phi2)^3 - 1
  double omega_sq_param;   // (3 phi2 - C1 + C2) / (C1 - phi2)
};
CenterFrequency center_frequency(const ReducedParams& r, double C3);
double center_limit_period(const ReducedParams& r, double C3);

double peaked_b_of_L(const ReducedParams& r, double L);
double peaked_dbdL(const ReducedParams& r, double L);
double peaked_L_of_b(const ReducedParams& r, double b);

struct ChiconeWitness {
  double Q, beta, eta;
  double x1, x2, x3;
  double min_R_on_range;
  double min_Wpp_on_range;
  double S_value, N_value;
  int n_samples;
};
ChiconeWitness chicone_witness(const ReducedParams& r, double C3, int n_samples = 2048);

// Pieces of the witness, exposed for tests.
namespace chicone {
double G(double x, double beta, double eta);
double R(double x, double beta, double eta);
double Wpp(double x, double beta, double eta);
double S(double eta, double beta);
double N(double beta, double eta);
}  // namespace chicone

enum class ScanAxis { b, C3 };
enum class Verdict { Increasing, Decreasing, SingleMax, Violated };
std::string_view to_string(ScanAxis a);
std::string_view to_string(Verdict v);

struct MonotonicityTable {
  ScanAxis axis;
  double fixed;
  std::vector<double> param, L, est_error;
  Verdict verdict;
  double min_abs_diff;   // smallest |L_{k+1} - L_k|
  double max_est_error;  // largest quadrature error estimate in the scan
};
MonotonicityTable monotonicity_scan(const ReducedParams& r, ScanAxis axis, double fixed,
                                    const std::vector<double>& grid, double tol = kPeriodTol);

// Default scan grids on the open interior. Along b: uniform, 1e-3 of the span
// in from each boundary. Along C3: tanh-stretched towards both ends, where the
// period maximum sits (the peaked end for b well above b1, the centre end just
// above b1).
std::vector<double> scan_grid(const ReducedParams& r, ScanAxis axis, double fixed, int count);

}  // namespace dgh
