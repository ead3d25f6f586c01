#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qent/types.hpp"

namespace qent {

/// An ordered set of particle labels together with each particle's local
/// Hilbert-space dimension.
///
/// Labels are 0-based inside the library; `to_string` and every user-facing
/// format print them 1-based.  A valid set is nonempty, strictly increasing and
/// every dimension is at least 2.  Only a default-constructed set is empty.
class ParticleSet {
 public:
  ParticleSet() = default;
  ParticleSet(std::vector<std::size_t> labels, std::vector<std::size_t> dims);

  /// Particles 0..dims.size()-1.
  static ParticleSet whole(std::span<const std::size_t> dims);

  const std::vector<std::size_t>& labels() const { return labels_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  /// Product of the local dimensions.
  std::size_t total_dim() const;

  bool contains(std::size_t label) const;
  // Position of `label` within this set; throws SubsetError when absent.
  std::size_t position_of(std::size_t label) const;
  std::size_t dim_of(std::size_t label) const { return dims_[position_of(label)]; }

  /// The members of this set named by `labels` (any order, no duplicates).
  ParticleSet subset(std::span<const std::size_t> labels) const;

  /// Labels of this set that are not in `other`; may be empty.
  std::vector<std::size_t> labels_not_in(const ParticleSet& other) const;

  bool is_subset_of(const ParticleSet& other) const;
  bool is_disjoint_from(const ParticleSet& other) const;

  /// Union of two disjoint sets; throws OverlapError otherwise.
  static ParticleSet merge(const ParticleSet& a, const ParticleSet& b);

  /// "{1,3}" with 1-based labels.
  std::string to_string() const;

  friend bool operator==(const ParticleSet&, const ParticleSet&) = default;
  friend auto operator<=>(const ParticleSet& a, const ParticleSet& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> dims_;
};

/// Two disjoint nonempty particle sets. Canonical form keeps the smallest
/// label on the left, so `{2}|{1}` and `{1}|{2}` construct the same value.
class Bipartition {
 public:
  Bipartition(ParticleSet left, ParticleSet right);

  /// Cut of `whole` whose left side holds `left_labels`; the right side is the
  /// complement. Throws PartitionError when either side would be empty.
  static Bipartition of(const ParticleSet& whole,
                        std::span<const std::size_t> left_labels);

  const ParticleSet& left() const { return left_; }
  const ParticleSet& right() const { return right_; }
  ParticleSet whole() const { return ParticleSet::merge(left_, right_); }

  /// "{1}|{2,3}".
  std::string to_string() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
  friend auto operator<=>(const Bipartition& a, const Bipartition& b) {
    if (auto c = a.left_ <=> b.left_; c != 0) return c;
    return a.right_ <=> b.right_;
  }

 private:
  ParticleSet left_;
  ParticleSet right_;
};

struct AmplitudeEntry {
  MultiIndex index;
  Complex value;
};

/// Normalized amplitude tensor over a labelled set of particles.
///
/// Flattening is row-major with the lowest label as the slowest axis, i.e.
/// |x>_1|y>_2|z>_3 sits at x*d2*d3 + y*d3 + z.  Global phase is kept as given.
class PureState {
 public:
  /// Takes ownership of a flat amplitude vector. With `normalize` set the
  /// vector is divided by its norm; otherwise its squared norm must be within
  /// kInputNormTol of 1 (and is renormalized if it is off by more than
  /// kDefaultTol).
  static PureState from_amplitudes(ParticleSet particles, Vector amplitudes,
                                   bool normalize);

  const ParticleSet& particles() const { return particles_; }
  const std::vector<std::size_t>& dims() const { return particles_.dims(); }
  std::size_t num_particles() const { return particles_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }

  Complex amplitude(std::span<const std::size_t> index) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;
  MultiIndex multi_index(std::size_t flat) const;

  /// Nonzero amplitudes in flat-index order.
  std::vector<AmplitudeEntry> entries() const;

 private:
  PureState(ParticleSet particles, Vector amplitudes)
      : particles_(std::move(particles)), amplitudes_(std::move(amplitudes)) {}

  ParticleSet particles_;
  Vector amplitudes_;
};

/// Builds a state over particles 0..dims.size()-1 from sparse entries.
/// Throws DimensionError, DuplicateIndexError or NormalizationError.
PureState build_pure_state(std::vector<std::size_t> dims,
                           std::span<const AmplitudeEntry> entries,
                           bool normalize = false);

/// Hermitian, unit-trace, positive semidefinite matrix over a particle set.
class DensityOperator {
 public:
  const ParticleSet& particles() const { return particles_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  // For kernels whose output is a density operator by construction (partial
  // traces, tensor products of valid operators). Only the shape is checked.
  static DensityOperator assume_valid(ParticleSet particles, Matrix matrix);

 private:
  DensityOperator(ParticleSet particles, Matrix matrix)
      : particles_(std::move(particles)), matrix_(std::move(matrix)) {}
  friend DensityOperator validate_density(Matrix matrix, ParticleSet particles);

  ParticleSet particles_;
  Matrix matrix_;
};

/// Human-readable list of violated density-operator invariants (empty when
/// `matrix` is valid). Shape problems short-circuit the remaining checks.
std::vector<std::string> density_diagnostics(const Matrix& matrix,
                                             const ParticleSet& particles,
                                             double tol = kDefaultTol);

/// Throws ShapeError, HermiticityError, TraceError or PositivityError (first
/// failing check in that order); the message lists every failed invariant.
DensityOperator validate_density(Matrix matrix, ParticleSet particles);

/// |psi><psi| over all of the state's particles.
DensityOperator projector_onto(const PureState& state);

}  // namespace qent
