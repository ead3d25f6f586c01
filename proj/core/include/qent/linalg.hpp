#pragma once

#include <cstddef>
#include <vector>

#include "qent/state.hpp"
#include "qent/types.hpp"

namespace qent {

struct SchmidtSpectrum {
  // Nonnegative, descending; coefficients at or below tol * largest dropped.
  std::vector<double> coefficients;
  Bipartition cut;

  std::size_t schmidt_number() const { return coefficients.size(); }
};

/// Amplitudes reshaped to a matrix whose rows enumerate the `rows` particles
/// and whose columns enumerate the rest, both in ascending label order.
Matrix amplitude_matrix(const PureState& state, const ParticleSet& rows);

/// Reduced density operator of `state` on `keep` (partial trace over the
/// complement). `keep` may be all of the state's particles.
DensityOperator reduce(const PureState& state, const ParticleSet& keep);

/// Partial trace of `rho` over rho.particles() minus `keep`.
DensityOperator reduce_density(const DensityOperator& rho, const ParticleSet& keep);

/// a (x) b over the union of the two particle sets, axes in ascending label
/// order regardless of which operand holds the lower labels.
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

SchmidtSpectrum schmidt(const PureState& state, const Bipartition& cut,
                        double tol = kDefaultTol);

/// Eigenvalues of a density operator, descending.
std::vector<double> eigenvalues(const DensityOperator& rho);

/// Tr(rho^2).
double purity(const DensityOperator& rho);

/// -sum lambda log2 lambda over eigenvalues above `tol`, after clamping to [0, 1].
double von_neumann_entropy(const DensityOperator& rho, double tol = kDefaultTol);

/// Number of eigenvalues strictly above tol * (largest eigenvalue).
std::size_t numerical_rank(const DensityOperator& rho, double tol = kDefaultTol);

}  // namespace qent
