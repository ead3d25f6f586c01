#include "qent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "index_map.hpp"
#include "qent/errors.hpp"

namespace qent {

namespace {

std::vector<bool> axis_mask(const ParticleSet& all, const ParticleSet& marked) {
  std::vector<bool> mask(all.size(), false);
  for (std::size_t label : marked.labels()) mask[all.position_of(label)] = true;
  return mask;
}

void require_subset(const ParticleSet& keep, const ParticleSet& all) {
  if (keep.empty()) throw SubsetError("kept particle set is empty");
  if (!keep.is_subset_of(all))
    throw SubsetError(keep.to_string() + " is not a subset of " + all.to_string());
}

}  // namespace

Matrix amplitude_matrix(const PureState& state, const ParticleSet& rows) {
  require_subset(rows, state.particles());
  const detail::AxisSplit split(state.dims(), axis_mask(state.particles(), rows));
  Matrix m(static_cast<Eigen::Index>(split.rows()), static_cast<Eigen::Index>(split.cols()));
  const Vector& psi = state.amplitudes();
  for (std::size_t flat = 0; flat < split.size(); ++flat)
    m(static_cast<Eigen::Index>(split.row(flat)), static_cast<Eigen::Index>(split.col(flat))) =
        psi[static_cast<Eigen::Index>(flat)];
  return m;
}

DensityOperator reduce(const PureState& state, const ParticleSet& keep) {
  // rho_keep = M M^dagger with M of shape D_keep x D_traced.
  const Matrix m = amplitude_matrix(state, keep);
  Matrix rho = m * m.adjoint();
  // Exact Hermiticity; the product is only Hermitian up to rounding.
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityOperator::assume_valid(keep, std::move(rho));
}

DensityOperator reduce_density(const DensityOperator& rho, const ParticleSet& keep) {
  require_subset(keep, rho.particles());
  if (keep == rho.particles()) return rho;

  const detail::AxisSplit split(rho.particles().dims(), axis_mask(rho.particles(), keep));
  const auto dk = static_cast<Eigen::Index>(split.rows());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& in = rho.matrix();
  for (std::size_t t = 0; t < split.cols(); ++t) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      const auto fi = static_cast<Eigen::Index>(split.flat(static_cast<std::size_t>(i), t));
      for (Eigen::Index j = 0; j < dk; ++j)
        out(i, j) += in(fi, static_cast<Eigen::Index>(split.flat(static_cast<std::size_t>(j), t)));
    }
  }
  return DensityOperator::assume_valid(keep, std::move(out));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  ParticleSet joint = ParticleSet::merge(a.particles(), b.particles());
  const detail::AxisSplit split(joint.dims(), axis_mask(joint, a.particles()));
  const auto d = static_cast<Eigen::Index>(split.size());
  Matrix out(d, d);
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  for (std::size_t i = 0; i < split.size(); ++i) {
    const auto ai = static_cast<Eigen::Index>(split.row(i));
    const auto bi = static_cast<Eigen::Index>(split.col(i));
    for (std::size_t j = 0; j < split.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ma(ai, static_cast<Eigen::Index>(split.row(j))) *
          mb(bi, static_cast<Eigen::Index>(split.col(j)));
    }
  }
  return DensityOperator::assume_valid(std::move(joint), std::move(out));
}

SchmidtSpectrum schmidt(const PureState& state, const Bipartition& cut, double tol) {
  if (cut.whole() != state.particles())
    throw PartitionError("cut " + cut.to_string() + " does not partition " +
                         state.particles().to_string());
  const Matrix m = amplitude_matrix(state, cut.left());
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();  // already descending
  SchmidtSpectrum out{{}, cut};
  const double largest = sv.size() ? sv[0] : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > tol * largest) out.coefficients.push_back(sv[k]);
  return out;
}

std::vector<double> eigenvalues(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityOperator& rho, double tol) {
  double s = 0.0;
  for (double lambda : eigenvalues(rho)) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > tol) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

std::size_t numerical_rank(const DensityOperator& rho, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rank tolerance must be positive");
  const auto ev = eigenvalues(rho);
  const double largest = ev.front();
  return static_cast<std::size_t>(
      std::count_if(ev.begin(), ev.end(), [&](double l) { return l > tol * largest; }));
}

}  // namespace qent
