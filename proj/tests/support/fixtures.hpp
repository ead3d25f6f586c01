#pragma once

// Small hand-written states shared by the unit suites.

#include <cmath>
#include <vector>

#include "qent/state.hpp"

namespace qent::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline PureState bell() {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<AmplitudeEntry> e{{{0, 0}, h}, {{1, 1}, h}};
  return build_pure_state({2, 2}, e);
}

// Bell pair on particles 1,2 times |c> on a 3-level particle 3.
inline PureState bell_times_singleton(std::size_t c = 0) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<AmplitudeEntry> e{{{0, 0, c}, h}, {{1, 1, c}, h}};
  return build_pure_state({2, 2, 3}, e);
}

// |a>_1 |b>_2 |c>_3 on 3-level particles.
inline PureState product3(std::size_t a = 0, std::size_t b = 1, std::size_t c = 2) {
  const std::vector<AmplitudeEntry> e{{{a, b, c}, 1.0}};
  return build_pure_state({3, 3, 3}, e);
}

inline ParticleSet labels(const PureState& s, std::vector<std::size_t> zero_based) {
  return s.particles().subset(zero_based);
}

inline Matrix diag(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k)
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
  return m;
}

}  // namespace qent::testing
