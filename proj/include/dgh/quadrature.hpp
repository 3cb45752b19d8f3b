#pragma once

#include <memory>
#include <vector>

namespace dgh {

// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};

// Rules are computed once per n (Newton on the three-term recurrence, O(n^2))
// and cached for the life of the process. Thread-safe.
std::shared_ptr<const GaussRule> gauss_legendre(int n);

// Integrate fn over [a, b] with the n-point rule.
template <class F>
double integrate(F&& fn, double a, double b, const GaussRule& rule) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * fn(mid + half * rule.x[i]);
  return half * acc;
}

}  // namespace dgh
