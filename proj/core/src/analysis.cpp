#include "qent/analysis.hpp"

#include <algorithm>
#include <bit>

#include <Eigen/SVD>

#include "qent/errors.hpp"
#include "qent/linalg.hpp"

namespace qent {

namespace {

void require_cut_of(const ParticleSet& whole, const Bipartition& cut) {
  if (cut.whole() != whole)
    throw PartitionError("cut " + cut.to_string() + " does not partition " +
                         whole.to_string());
}

void require_proper_subset(const ParticleSet& subset, const ParticleSet& whole) {
  if (subset.empty()) throw SubsetError("subset is empty");
  if (!subset.is_subset_of(whole))
    throw SubsetError(subset.to_string() + " is not a subset of " + whole.to_string());
  if (subset.size() == whole.size())
    throw SubsetError(subset.to_string() + " is not a proper subset of " + whole.to_string());
}

void require_composite(const PureState& state, std::string_view what) {
  if (state.num_particles() < 2)
    throw SystemSizeError(std::string(what) + " needs at least two particles");
}

// Subsets of `whole` with size in [lo, hi], lexicographic by label list.
std::vector<ParticleSet> subsets_by_size(const ParticleSet& whole, std::size_t lo,
                                         std::size_t hi) {
  const std::size_t n = whole.size();
  std::vector<ParticleSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const auto count = static_cast<std::size_t>(std::popcount(mask));
    if (count < lo || count > hi) continue;
    std::vector<std::size_t> labels;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1u) labels.push_back(whole.labels()[k]);
    out.push_back(whole.subset(labels));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void split_recursively(const PureState& block, double tol, const CutOrder& order,
                       std::vector<ParticleSet>& out) {
  if (block.num_particles() == 1) {
    out.push_back(block.particles());
    return;
  }
  auto cuts = enumerate_cuts(block.particles());
  if (order) order(cuts);
  for (const auto& cut : cuts) {
    if (auto factors = factor_pure(block, cut, tol)) {
      split_recursively(factors->first, tol, order, out);
      split_recursively(factors->second, tol, order, out);
      return;
    }
  }
  out.push_back(block.particles());
}

}  // namespace

// ---------------------------------------------------------------------------
// Small value types

std::string Partition::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) out += ",";
    out += blocks[k].to_string();
  }
  return out + "}";
}

std::string_view to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::CompletelyUnentangled: return "CompletelyUnentangled";
    case ClassKind::IncompletelyEntangled: return "IncompletelyEntangled";
    case ClassKind::CompletelyEntangled: return "CompletelyEntangled";
  }
  return "?";
}

std::optional<ClassKind> class_kind_from_string(std::string_view name) {
  for (auto kind : {ClassKind::CompletelyUnentangled, ClassKind::IncompletelyEntangled,
                    ClassKind::CompletelyEntangled})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

ClassLabel ClassLabel::from_block_count(std::size_t k, std::size_t n) {
  if (k == n) return {ClassKind::CompletelyUnentangled, k};
  if (k == 1) return {ClassKind::CompletelyEntangled, k};
  return {ClassKind::IncompletelyEntangled, k};
}

std::string ClassLabel::to_string() const {
  std::string out(qent::to_string(kind));
  if (kind == ClassKind::IncompletelyEntangled) out += "(k=" + std::to_string(blocks) + ")";
  return out;
}

std::string_view to_string(PartialityKind kind) {
  switch (kind) {
    case PartialityKind::NonEntangled: return "NonEntangled";
    case PartialityKind::Partial: return "Partial";
    case PartialityKind::Total: return "Total";
  }
  return "?";
}

std::optional<PartialityKind> partiality_kind_from_string(std::string_view name) {
  for (auto kind : {PartialityKind::NonEntangled, PartialityKind::Partial, PartialityKind::Total})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

void EntanglementGraph::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i == j) return;
  adj_[i * n_ + j] = present;
  adj_[j * n_ + i] = present;
}

std::vector<std::pair<std::size_t, std::size_t>> EntanglementGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

bool EntanglementGraph::is_complete() const {
  return edges().size() == n_ * (n_ - (n_ ? 1 : 0)) / 2;
}

// ---------------------------------------------------------------------------
// Product tests

bool is_product_bipartition(const PureState& state, const Bipartition& cut, double tol) {
  return schmidt(state, cut, tol).schmidt_number() == 1;
}

std::optional<std::pair<PureState, PureState>> factor_pure(const PureState& state,
                                                           const Bipartition& cut,
                                                           double tol) {
  require_cut_of(state.particles(), cut);
  const Matrix m = amplitude_matrix(state, cut.left());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 1 && sv[1] > tol * sv[0]) return std::nullopt;

  // m ~= s u v^dagger, so psi = u (x) s conj(v).
  Vector left = svd.matrixU().col(0);
  Vector right = sv[0] * svd.matrixV().col(0).conjugate();
  return std::pair{PureState::from_amplitudes(cut.left(), std::move(left), true),
                   PureState::from_amplitudes(cut.right(), std::move(right), true)};
}

bool is_rank_one_reduced(const PureState& state, const ParticleSet& subset, double tol) {
  require_proper_subset(subset, state.particles());
  return numerical_rank(reduce(state, subset), tol) == 1;
}

bool is_product_density(const DensityOperator& rho, const Bipartition& cut, double tol) {
  require_cut_of(rho.particles(), cut);
  const auto left = reduce_density(rho, cut.left());
  const auto right = reduce_density(rho, cut.right());
  const auto product = tensor_product(left, right);
  return (rho.matrix() - product.matrix()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Structure

std::vector<Bipartition> enumerate_cuts(const ParticleSet& set) {
  const std::size_t m = set.size();
  std::vector<Bipartition> cuts;
  if (m < 2) return cuts;
  const auto& labels = set.labels();
  // The smallest label is pinned to the left; masks range over the others.
  const std::size_t others = m - 1;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << others); ++mask) {
    std::vector<std::size_t> left{labels[0]};
    for (std::size_t k = 0; k < others; ++k)
      if (mask >> k & 1u) left.push_back(labels[k + 1]);
    cuts.push_back(Bipartition::of(set, left));
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

Partition finest_partition(const PureState& state, double tol, const CutOrder& order) {
  Partition out;
  split_recursively(state, tol, order, out.blocks);
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const ParticleSet& a, const ParticleSet& b) {
              return a.labels().front() < b.labels().front();
            });
  return out;
}

ClassLabel classify(const PureState& state, double tol) {
  return ClassLabel::from_block_count(finest_partition(state, tol).size(),
                                      state.num_particles());
}

EntanglementGraph pairwise_graph(const PureState& state, double tol) {
  require_composite(state, "pairwise graph");
  const auto& whole = state.particles();
  const std::size_t n = whole.size();
  EntanglementGraph graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t li = whole.labels()[i], lj = whole.labels()[j];
      const std::vector<std::size_t> pair{li, lj};
      const std::vector<std::size_t> first{li};
      const auto sub = whole.subset(pair);
      const auto rho = reduce(state, sub);
      graph.set_edge(i, j, !is_product_density(rho, Bipartition::of(sub, first), tol));
    }
  }
  return graph;
}

UtterVerdict is_utterly_entangled(const PureState& state, const AnalysisTolerances& tols) {
  require_composite(state, "utter entanglement");
  UtterVerdict verdict;
  verdict.label = classify(state, tols.schmidt_tol);
  if (verdict.label.kind != ClassKind::CompletelyEntangled) return verdict;

  const auto& whole = state.particles();
  for (const auto& sub : subsets_by_size(whole, 2, whole.size() - 1)) {
    const auto rho = reduce(state, sub);
    for (const auto& cut : enumerate_cuts(sub)) {
      if (is_product_density(rho, cut, tols.product_tol)) {
        verdict.witness = UtterWitness{sub, cut};
        return verdict;
      }
    }
  }
  verdict.utter = true;
  return verdict;
}

UtterVerdict is_utterly_entangled(const PureState& state, double tol) {
  return is_utterly_entangled(state, AnalysisTolerances::uniform(tol));
}

PartialityFlag partiality(const PureState& state, const ParticleSet& subset, double tol) {
  require_proper_subset(subset, state.particles());
  const auto rho = reduce(state, subset);
  PartialityFlag flag;
  flag.rank = numerical_rank(rho, tol);
  flag.full_dim = subset.total_dim();
  if (flag.rank == 1)
    flag.kind = PartialityKind::NonEntangled;
  else if (flag.rank < flag.full_dim)
    flag.kind = PartialityKind::Partial;
  else
    flag.kind = PartialityKind::Total;
  return flag;
}

EntanglementReport full_report(const PureState& state, const AnalysisTolerances& tols) {
  EntanglementReport report;
  const auto& whole = state.particles();
  report.num_particles = whole.size();
  report.tolerances = tols;
  report.finest = finest_partition(state, tols.schmidt_tol);
  report.label = ClassLabel::from_block_count(report.finest.size(), whole.size());

  if (whole.size() < 2) {
    report.pairwise = EntanglementGraph(whole.size());
    report.utter.label = report.label;
    return report;
  }

  report.pairwise = pairwise_graph(state, tols.product_tol);
  for (std::size_t label : whole.labels()) {
    const std::vector<std::size_t> one{label};
    auto sub = whole.subset(one);
    auto flag = partiality(state, sub, tols.rank_tol);
    report.partiality.push_back({std::move(sub), flag});
  }
  if (report.finest.size() > 1) {
    for (const auto& block : report.finest.blocks) {
      if (block.size() < 2) continue;
      report.partiality.push_back({block, partiality(state, block, tols.rank_tol)});
    }
  }
  report.utter = is_utterly_entangled(state, tols);
  return report;
}

}  // namespace qent
