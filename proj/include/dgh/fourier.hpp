#pragma once

// Fourier collocation on a uniform periodic grid z_j = j L / n, n even.
// Operators are circulant; each is defined by its Fourier symbol, with the
// Nyquist mode treated explicitly.

#include <vector>

#include <Eigen/Dense>

namespace dgh::fourier {

// A_ij = col[(i - j) mod n]
Eigen::MatrixXd circulant(const Eigen::VectorXd& col);

Eigen::MatrixXd diff1(int n, double L);  // symbol i k, Nyquist 0
Eigen::MatrixXd diff2(int n, double L);  // symbol -k^2, Nyquist -k_N^2
// J = -(1 - d^2)^{-1} d: symbol -i k / (1 + k^2), Nyquist 0.
Eigen::MatrixXd jmat(int n, double L);

Eigen::VectorXd derivative(const Eigen::VectorXd& v, double L, int order);

// Largest |coefficient| over |k| >= n/4 relative to the largest over k != 0;
// small values mean the grid resolves v.
double spectral_tail(const std::vector<double>& v);

inline Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace dgh::fourier
