#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// One coordinate per particle, 0-based basis labels.
using MultiIndex = std::vector<std::size_t>;

// Default tolerance for every spectral test (relative to the largest
// eigenvalue or singular value) and for the density-operator invariants.
inline constexpr double kDefaultTol = 1e-9;

// Input amplitudes may be off by this much in squared norm before the state
// is rejected as unnormalized.
inline constexpr double kInputNormTol = 1e-6;

}  // namespace qent
