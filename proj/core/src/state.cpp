#include "qent/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "index_map.hpp"
#include "qent/errors.hpp"

namespace qent {

namespace {

std::string labels_string(std::span<const std::size_t> labels) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (k) out << ',';
    out << labels[k] + 1;
  }
  out << '}';
  return out.str();
}

std::string index_string(std::span<const std::size_t> index) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) out << ',';
    out << index[k];
  }
  out << ')';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// ParticleSet

ParticleSet::ParticleSet(std::vector<std::size_t> labels, std::vector<std::size_t> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.empty()) throw SubsetError("particle set must be nonempty");
  if (labels_.size() != dims_.size())
    throw DimensionError("particle set has " + std::to_string(labels_.size()) +
                         " labels but " + std::to_string(dims_.size()) + " dims");
  for (std::size_t k = 1; k < labels_.size(); ++k) {
    if (labels_[k] <= labels_[k - 1])
      throw SubsetError("particle labels must be strictly increasing: " +
                        labels_string(labels_));
  }
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] < 2)
      throw DimensionError("particle " + std::to_string(labels_[k] + 1) +
                           " has dimension " + std::to_string(dims_[k]) +
                           "; every particle needs dimension >= 2");
  }
}

ParticleSet ParticleSet::whole(std::span<const std::size_t> dims) {
  std::vector<std::size_t> labels(dims.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = k;
  return ParticleSet(std::move(labels), {dims.begin(), dims.end()});
}

std::size_t ParticleSet::total_dim() const { return detail::product_of(dims_); }

bool ParticleSet::contains(std::size_t label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t ParticleSet::position_of(std::size_t label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    throw SubsetError("particle " + std::to_string(label + 1) + " is not in " +
                      to_string());
  return static_cast<std::size_t>(it - labels_.begin());
}

ParticleSet ParticleSet::subset(std::span<const std::size_t> labels) const {
  std::vector<std::size_t> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw SubsetError("duplicate particle label in " + labels_string(labels));
  std::vector<std::size_t> dims;
  dims.reserve(sorted.size());
  for (std::size_t label : sorted) dims.push_back(dim_of(label));
  return ParticleSet(std::move(sorted), std::move(dims));
}

std::vector<std::size_t> ParticleSet::labels_not_in(const ParticleSet& other) const {
  std::vector<std::size_t> out;
  for (std::size_t label : labels_)
    if (!other.contains(label)) out.push_back(label);
  return out;
}

bool ParticleSet::is_subset_of(const ParticleSet& other) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (!other.contains(labels_[k]) || other.dim_of(labels_[k]) != dims_[k]) return false;
  }
  return true;
}

bool ParticleSet::is_disjoint_from(const ParticleSet& other) const {
  return std::none_of(labels_.begin(), labels_.end(),
                      [&](std::size_t l) { return other.contains(l); });
}

ParticleSet ParticleSet::merge(const ParticleSet& a, const ParticleSet& b) {
  if (!a.is_disjoint_from(b))
    throw OverlapError("particle sets " + a.to_string() + " and " + b.to_string() +
                       " overlap");
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t k = 0; k < a.size(); ++k) all.emplace_back(a.labels_[k], a.dims_[k]);
  for (std::size_t k = 0; k < b.size(); ++k) all.emplace_back(b.labels_[k], b.dims_[k]);
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> labels, dims;
  for (auto [l, d] : all) {
    labels.push_back(l);
    dims.push_back(d);
  }
  return ParticleSet(std::move(labels), std::move(dims));
}

std::string ParticleSet::to_string() const { return labels_string(labels_); }

// ---------------------------------------------------------------------------
// Bipartition

Bipartition::Bipartition(ParticleSet left, ParticleSet right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.empty() || right_.empty())
    throw PartitionError("both sides of a bipartition must be nonempty");
  if (!left_.is_disjoint_from(right_))
    throw PartitionError("bipartition sides " + left_.to_string() + " and " +
                         right_.to_string() + " overlap");
  if (right_.labels().front() < left_.labels().front()) std::swap(left_, right_);
}

Bipartition Bipartition::of(const ParticleSet& whole,
                            std::span<const std::size_t> left_labels) {
  ParticleSet left;
  try {
    left = whole.subset(left_labels);
  } catch (const SubsetError& e) {
    throw PartitionError(e.what());
  }
  const auto rest = whole.labels_not_in(left);
  if (rest.empty())
    throw PartitionError("cut side " + left.to_string() + " covers all of " +
                         whole.to_string());
  return Bipartition(std::move(left), whole.subset(rest));
}

std::string Bipartition::to_string() const {
  return left_.to_string() + "|" + right_.to_string();
}

// ---------------------------------------------------------------------------
// PureState

PureState PureState::from_amplitudes(ParticleSet particles, Vector amplitudes,
                                     bool normalize) {
  if (particles.empty()) throw DimensionError("state needs at least one particle");
  if (static_cast<std::size_t>(amplitudes.size()) != particles.total_dim())
    throw DimensionError("amplitude vector has length " +
                         std::to_string(amplitudes.size()) + ", expected " +
                         std::to_string(particles.total_dim()));
  const double norm2 = amplitudes.squaredNorm();
  if (!std::isfinite(norm2)) throw NormalizationError("amplitudes are not finite");
  if (norm2 == 0.0) throw NormalizationError("state has no nonzero amplitude");
  if (normalize) {
    amplitudes /= std::sqrt(norm2);
  } else if (std::abs(norm2 - 1.0) > kInputNormTol) {
    std::ostringstream msg;
    msg << "squared norm is " << norm2 << ", expected 1 (pass normalize to rescale)";
    throw NormalizationError(msg.str());
  } else if (std::abs(norm2 - 1.0) > kDefaultTol) {
    amplitudes /= std::sqrt(norm2);
  }
  return PureState(std::move(particles), std::move(amplitudes));
}

std::size_t PureState::flat_index(std::span<const std::size_t> index) const {
  const auto& d = dims();
  if (index.size() != d.size())
    throw DimensionError("multi-index " + index_string(index) + " has " +
                         std::to_string(index.size()) + " coordinates, expected " +
                         std::to_string(d.size()));
  std::size_t flat = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (index[k] >= d[k])
      throw DimensionError("multi-index " + index_string(index) + " is out of range at particle " +
                           std::to_string(particles_.labels()[k] + 1) + " (dimension " +
                           std::to_string(d[k]) + ")");
    flat = flat * d[k] + index[k];
  }
  return flat;
}

MultiIndex PureState::multi_index(std::size_t flat) const {
  const auto& d = dims();
  MultiIndex index(d.size());
  for (std::size_t k = d.size(); k-- > 0;) {
    index[k] = flat % d[k];
    flat /= d[k];
  }
  return index;
}

Complex PureState::amplitude(std::span<const std::size_t> index) const {
  return amplitudes_[static_cast<Eigen::Index>(flat_index(index))];
}

std::vector<AmplitudeEntry> PureState::entries() const {
  std::vector<AmplitudeEntry> out;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (amplitudes_[i] != Complex{})
      out.push_back({multi_index(static_cast<std::size_t>(i)), amplitudes_[i]});
  }
  return out;
}

PureState build_pure_state(std::vector<std::size_t> dims,
                           std::span<const AmplitudeEntry> entries, bool normalize) {
  if (dims.empty()) throw DimensionError("dims must list at least one particle");
  ParticleSet particles = ParticleSet::whole(dims);
  if (particles.total_dim() > (std::size_t{1} << 28))
    throw DimensionError("total dimension " + std::to_string(particles.total_dim()) +
                         " exceeds the dense storage limit");

  Vector amps = Vector::Zero(static_cast<Eigen::Index>(particles.total_dim()));
  std::set<std::size_t> seen;
  const auto strides = detail::strides_of(dims);
  for (const auto& entry : entries) {
    if (entry.index.size() != dims.size())
      throw DimensionError("multi-index " + index_string(entry.index) + " has " +
                           std::to_string(entry.index.size()) +
                           " coordinates, expected " + std::to_string(dims.size()));
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (entry.index[k] >= dims[k])
        throw DimensionError("multi-index " + index_string(entry.index) +
                             " is out of range at particle " + std::to_string(k + 1) +
                             " (dimension " + std::to_string(dims[k]) + ")");
      flat += entry.index[k] * strides[k];
    }
    if (!seen.insert(flat).second)
      throw DuplicateIndexError("multi-index " + index_string(entry.index) +
                                " listed more than once");
    amps[static_cast<Eigen::Index>(flat)] = entry.value;
  }
  return PureState::from_amplitudes(std::move(particles), std::move(amps), normalize);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::assume_valid(ParticleSet particles, Matrix matrix) {
  const auto d = static_cast<Eigen::Index>(particles.total_dim());
  if (matrix.rows() != d || matrix.cols() != d)
    throw ShapeError("density matrix is " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + ", expected " + std::to_string(d) +
                     "x" + std::to_string(d));
  return DensityOperator(std::move(particles), std::move(matrix));
}

std::vector<std::string> density_diagnostics(const Matrix& matrix,
                                             const ParticleSet& particles, double tol) {
  std::vector<std::string> issues;
  const auto d = static_cast<Eigen::Index>(particles.total_dim());
  if (matrix.rows() != d || matrix.cols() != d) {
    issues.push_back("shape: matrix is " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + ", expected " + std::to_string(d) +
                     "x" + std::to_string(d));
    return issues;
  }
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    std::ostringstream msg;
    msg << "hermiticity: max |rho - rho^dagger| = " << herm;
    issues.push_back(msg.str());
  }
  const Complex trace = matrix.trace();
  if (std::abs(trace - Complex{1.0, 0.0}) > tol) {
    std::ostringstream msg;
    msg << "trace: trace = " << trace.real();
    if (trace.imag() != 0.0) msg << (trace.imag() < 0 ? " - " : " + ") << std::abs(trace.imag()) << "i";
    msg << ", expected 1";
    issues.push_back(msg.str());
  }
  // Eigenvalues of the Hermitian part; a non-Hermitian input has already been
  // reported above.
  const Matrix herm_part = (matrix + matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm_part, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -tol) {
    std::ostringstream msg;
    msg << "positivity: smallest eigenvalue = " << smallest;
    issues.push_back(msg.str());
  }
  return issues;
}

DensityOperator validate_density(Matrix matrix, ParticleSet particles) {
  const auto issues = density_diagnostics(matrix, particles);
  if (issues.empty()) return DensityOperator(std::move(particles), std::move(matrix));

  std::string message = "invalid density operator over " + particles.to_string() + ":";
  for (const auto& issue : issues) message += " [" + issue + "]";
  const auto& first = issues.front();
  if (first.starts_with("shape")) throw ShapeError(message);
  if (first.starts_with("hermiticity")) throw HermiticityError(message);
  if (first.starts_with("trace")) throw TraceError(message);
  throw PositivityError(message);
}

DensityOperator projector_onto(const PureState& state) {
  const Vector& psi = state.amplitudes();
  return DensityOperator::assume_valid(state.particles(), psi * psi.adjoint());
}

}  // namespace qent
