#pragma once

// Sampled periodic wave profiles phi(z) on a uniform grid with the crest at
// z = 0, plus conserved quantities and residual checks.

#include <string_view>
#include <vector>

#include "dgh/params.hpp"

namespace dgh {

enum class Provenance { Numeric, PeakedClosedForm, Constant };
std::string_view to_string(Provenance p);

struct Profile {
  ReducedParams params;
  double C3 = 0, b = 0;
  double period_z = 0;
  std::vector<double> phi, dphi;  // at z_j = j * period_z / N, dphi in z-units
  Provenance provenance = Provenance::Numeric;

  int n() const { return static_cast<int>(phi.size()); }
  double dz() const { return period_z / static_cast<double>(phi.size()); }
};

Profile solve_profile(const ReducedParams& r, double C3, double b, int N);
Profile peaked_profile(const ReducedParams& r, double L, int N);

struct ConservedQuantities {
  double M, E, F;
  PhysicalParams physical;
};
ConservedQuantities conserved_quantities(const Profile& p, const PhysicalParams& phys);

struct Residuals {
  double res2;  // second-order equation, max norm
  double res1;  // first integral, max norm
  std::vector<double> res2_pointwise;
};
// Derivatives for res2 are spectral for smooth profiles; for the peaked
// family a local fourth-order stencil is used so the corner stays local.
Residuals residual_check(const Profile& p);

}  // namespace dgh
