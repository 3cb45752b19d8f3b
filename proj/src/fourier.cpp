#include "dgh/fourier.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "dgh/errors.hpp"

namespace dgh::fourier {

namespace {
constexpr double kPi = std::numbers::pi;

void check(int n, double L) {
  if (n < 4 || n % 2 != 0) fail(ErrorCode::InvalidArgument, "collocation grid size must be even and >= 4");
  if (!(L > 0)) fail(ErrorCode::InvalidArgument, "collocation period must be positive");
}
}  // namespace

Eigen::MatrixXd circulant(const Eigen::VectorXd& col) {
  const Eigen::Index n = col.size();
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) A(i, j) = col((i - j + n) % n);
  return A;
}

// Closed-form first columns (Trefethen, Spectral Methods in MATLAB, ch. 3),
// with the mirror entries copied so (anti)symmetry holds bit for bit.
Eigen::MatrixXd diff1(int n, double L) {
  check(n, L);
  const double sc = 2 * kPi / L;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int m = 1; m < n / 2; ++m) {
    c(m) = sc * 0.5 * (m % 2 ? -1.0 : 1.0) / std::tan(kPi * m / n);
    c(n - m) = -c(m);
  }
  return circulant(c);
}

Eigen::MatrixXd diff2(int n, double L) {
  check(n, L);
  const double sc = 2 * kPi / L;
  Eigen::VectorXd c(n);
  c(0) = -sc * sc * (static_cast<double>(n) * n / 12.0 + 1.0 / 6.0);
  for (int m = 1; m <= n / 2; ++m) {
    double s = std::sin(kPi * m / n);
    c(m) = -sc * sc * 0.5 * (m % 2 ? -1.0 : 1.0) / (s * s);
    c(n - m) = c(m);
  }
  return circulant(c);
}

Eigen::MatrixXd jmat(int n, double L) {
  check(n, L);
  // c_m = (1/n) sum_k sigma(k) e^{2 pi i k m / n}; sigma odd and imaginary,
  // so c_m = (2/n) sum_{k=1}^{n/2-1} k/(1+k^2) sin(2 pi k m / n).
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int m = 1; m < n / 2; ++m) {
    long double acc = 0;
    for (int k = 1; k < n / 2; ++k) {
      double kap = 2 * kPi * k / L;
      acc += kap / (1 + kap * kap) * std::sin(2 * kPi * ((static_cast<long>(k) * m) % n) / n);
    }
    c(m) = static_cast<double>(2 * acc / n);
    c(n - m) = -c(m);
  }
  return circulant(c);
}

Eigen::VectorXd derivative(const Eigen::VectorXd& v, double L, int order) {
  const int n = static_cast<int>(v.size());
  if (order == 1) return diff1(n, L) * v;
  if (order == 2) return diff2(n, L) * v;
  fail(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
}

double spectral_tail(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  double head = 0, tail = 0;
  for (int k = 1; k <= n / 2; ++k) {
    std::complex<double> acc = 0;
    for (int j = 0; j < n; ++j) acc += v[j] * std::polar(1.0, -2 * kPi * ((static_cast<long>(k) * j) % n) / n);
    double a = std::abs(acc);
    head = std::max(head, a);
    if (k >= n / 4) tail = std::max(tail, a);
  }
  return head > 0 ? tail / head : 0.0;
}

}  // namespace dgh::fourier
