#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "dgh/errors.hpp"

namespace dgh::detail {

// Plain bisection down to adjacent doubles. fn(lo) and fn(hi) must differ in
// sign (zero at an end is accepted). Returns the end with smaller |fn|.
template <class F>
double bisect(F&& fn, double lo, double hi) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) fail(ErrorCode::NonConvergent, "bisect: no sign change");
  for (int it = 0; it < 2200; ++it) {
    double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    double fm = fn(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

// Bracketed root by TOMS 748, converged to (nearly) full double precision.
template <class F>
double bracketed_root(F&& fn, double lo, double hi) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) fail(ErrorCode::NonConvergent, "bracketed_root: no sign change");
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto [a, b] = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, tol, iters);
  double fa = fn(a), fb = fn(b);
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace dgh::detail
