#include "dgh/oracles.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "detail/roots.hpp"
#include "dgh/errors.hpp"

namespace dgh::oracle {

double shooting_period(const ReducedParams& r, double C3, double b, double tol) {
  TurningPoints tp = bisection_turning_points(r, C3, b);
  using State = std::array<double, 2>;
  auto rhs = [&](const State& x, State& dx, double) {
    dx[0] = x[1];
    dx[1] = -potential_dU(x[0], r, C3);
  };
  namespace oi = boost::numeric::odeint;
  auto st = oi::make_dense_output(tol, tol, oi::runge_kutta_dopri5<State>());
  st.initialize(State{tp.phi_plus, 0.0}, 0.0, 1e-3);
  // y < 0 on the descent from crest to trough; the trough is where y returns to 0.
  bool descending = false;
  for (int steps = 0; steps < 10000000; ++steps) {
    auto [t0, t1] = st.do_step(rhs);
    double y1 = st.current_state()[1];
    if (y1 < 0) descending = true;
    if (descending && y1 >= 0) {
      State s;
      auto yat = [&](double t) {
        st.calc_state(t, s);
        return s[1];
      };
      return 2 * detail::bisect(yat, t0, t1);
    }
  }
  fail(ErrorCode::IntegrationFailure, "shooting oracle never reached the trough");
}

TurningPoints bisection_turning_points(const ReducedParams& r, double C3, double b) {
  if (region_classify(r, C3, b) != RegionClass::InteriorPeriodic)
    fail(ErrorCode::NoOrbit, "oracle needs an interior point");
  // phi2 from bisection on f(phi) - C3 over (s, C1), then U - b on each side.
  const double s = (r.C1 - r.C2) / 3;
  double q2 = detail::bisect([&](double x) { return f_eval(x, r) - C3; }, s, r.C1);
  double q1 = detail::bisect([&](double x) { return f_eval(x, r) - C3; }, -0.5 * r.C2, s);
  auto g = [&](double x) { return potential_U(x, r, C3) - b; };
  double pm = detail::bisect(g, q1, q2);
  // U -> +inf as phi -> C1 from below; step towards C1 until U - b > 0.
  double hi = q2, gap = r.C1 - q2;
  while (g(hi) <= 0) {
    gap *= 0.5;
    hi = r.C1 - gap;
    if (gap < 1e-300) fail(ErrorCode::NonConvergent, "oracle: no upper turning point");
  }
  double pp = detail::bisect(g, q2, hi);
  return {pm, pp};
}

}  // namespace dgh::oracle
