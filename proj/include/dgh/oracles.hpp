#pragma once

// Reference computations that take a different numerical route from the
// production code, for cross-checks in the verification suites.

#include "dgh/params.hpp"

namespace dgh::oracle {

// Period by integrating phi' = y, y' = -U'(phi) from the crest (phi_+, 0) with
// adaptive Dormand-Prince and locating the trough (y back to 0) on the dense
// output; L = 2 * (time to trough).
double shooting_period(const ReducedParams& r, double C3, double b, double tol = 1e-13);

// Turning points by plain bisection on U(phi) - b (no use of the cubic P).
TurningPoints bisection_turning_points(const ReducedParams& r, double C3, double b);

}  // namespace dgh::oracle
