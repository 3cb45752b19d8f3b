#include "dgh/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "dgh/errors.hpp"

namespace dgh {

namespace {

GaussRule build_rule(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
        // one more pass to refresh the derivative at the converged node
        p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    double w = 2 / ((1 - x * x) * dp * dp);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0;
  return g;
}

}  // namespace

std::shared_ptr<const GaussRule> gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussRule>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussRule>(build_rule(n));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, rule).first->second;
}

}  // namespace dgh
