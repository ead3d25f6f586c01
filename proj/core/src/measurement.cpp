#include "qent/measurement.hpp"

#include <cmath>
#include <sstream>

#include "index_map.hpp"
#include "qent/errors.hpp"

namespace qent {

Projector Projector::make(std::size_t particle, Matrix matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
    throw ProjectorError("projector must be a square matrix of side >= 2");
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  const double idem = (matrix * matrix - matrix).cwiseAbs().maxCoeff();
  if (herm > kDefaultTol || idem > kDefaultTol) {
    std::ostringstream msg;
    msg << "not an orthogonal projector (max |P - P^dagger| = " << herm
        << ", max |P^2 - P| = " << idem << ")";
    throw ProjectorError(msg.str());
  }
  // For an orthogonal projector the trace is the rank.
  const auto rank = static_cast<std::size_t>(std::lround(matrix.trace().real()));
  if (rank == 0) throw ProjectorError("projector is zero");
  return Projector(particle, std::move(matrix), rank);
}

Projector Projector::onto_basis(std::size_t particle, std::size_t dim,
                                std::span<const std::size_t> basis) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t b : basis) {
    if (b >= dim)
      throw ProjectorError("basis vector " + std::to_string(b) + " out of range for dimension " +
                           std::to_string(dim));
    if (m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) != Complex{})
      throw ProjectorError("basis vector " + std::to_string(b) + " listed twice");
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return make(particle, std::move(m));
}

MeasurementOutcome project(const PureState& state, const Projector& p) {
  const auto& particles = state.particles();
  if (!particles.contains(p.particle()))
    throw ParticleError("particle " + std::to_string(p.particle() + 1) +
                        " is not part of the state " + particles.to_string());
  const std::size_t pos = particles.position_of(p.particle());
  if (particles.dims()[pos] != p.dim())
    throw ParticleError("projector acts on dimension " + std::to_string(p.dim()) +
                        " but particle " + std::to_string(p.particle() + 1) + " has dimension " +
                        std::to_string(particles.dims()[pos]));

  std::vector<bool> mask(particles.size(), false);
  mask[pos] = true;
  const detail::AxisSplit split(particles.dims(), mask);

  const Vector& psi = state.amplitudes();
  Matrix m(static_cast<Eigen::Index>(split.rows()), static_cast<Eigen::Index>(split.cols()));
  for (std::size_t flat = 0; flat < split.size(); ++flat)
    m(static_cast<Eigen::Index>(split.row(flat)), static_cast<Eigen::Index>(split.col(flat))) =
        psi[static_cast<Eigen::Index>(flat)];
  const Matrix projected = p.matrix() * m;

  MeasurementOutcome outcome;
  outcome.probability = projected.squaredNorm();
  if (outcome.probability <= kImpossibleBranch) return outcome;

  Vector post(psi.size());
  for (std::size_t flat = 0; flat < split.size(); ++flat)
    post[static_cast<Eigen::Index>(flat)] = projected(
        static_cast<Eigen::Index>(split.row(flat)), static_cast<Eigen::Index>(split.col(flat)));
  outcome.post = PureState::from_amplitudes(particles, std::move(post), true);
  return outcome;
}

}  // namespace qent
