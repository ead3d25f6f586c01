#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "qent/state.hpp"
#include "qent/types.hpp"

namespace qent {

// Branches with probability at or below this are reported as impossible.
inline constexpr double kImpossibleBranch = 1e-12;

/// Hermitian idempotent operator acting on one particle.
class Projector {
 public:
  /// Throws ProjectorError unless `matrix` is square, Hermitian, idempotent
  /// and nonzero (all within kDefaultTol).
  static Projector make(std::size_t particle, Matrix matrix);

  /// Projector onto the span of the listed basis vectors of a `dim`-level
  /// particle.
  static Projector onto_basis(std::size_t particle, std::size_t dim,
                              std::span<const std::size_t> basis);

  std::size_t particle() const { return particle_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t rank() const { return rank_; }

 private:
  Projector(std::size_t particle, Matrix matrix, std::size_t rank)
      : particle_(particle), matrix_(std::move(matrix)), rank_(rank) {}

  std::size_t particle_;
  Matrix matrix_;
  std::size_t rank_;
};

struct MeasurementOutcome {
  double probability = 0.0;
  std::optional<PureState> post;  // empty when probability <= kImpossibleBranch
};

/// Applies P on one particle (identity elsewhere). Throws ParticleError when
/// the particle is absent or its dimension does not match the projector.
MeasurementOutcome project(const PureState& state, const Projector& p);

}  // namespace qent
