#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qent/state.hpp"
#include "qent/types.hpp"

namespace qent {

/// The three knobs every analysis result depends on.
struct AnalysisTolerances {
  double schmidt_tol = kDefaultTol;  // relative singular-value cutoff
  double rank_tol = kDefaultTol;     // relative eigenvalue cutoff
  double product_tol = kDefaultTol;  // max-abs entry gap for product densities

  static AnalysisTolerances uniform(double tol) { return {tol, tol, tol}; }
  friend bool operator==(const AnalysisTolerances&, const AnalysisTolerances&) = default;
};

/// Disjoint blocks covering every particle, each sorted, ordered by their
/// smallest label.
struct Partition {
  std::vector<ParticleSet> blocks;

  std::size_t size() const { return blocks.size(); }
  std::string to_string() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

enum class ClassKind { CompletelyUnentangled, IncompletelyEntangled, CompletelyEntangled };

struct ClassLabel {
  ClassKind kind = ClassKind::CompletelyEntangled;
  std::size_t blocks = 1;  // k, the size of the finest partition

  /// k = n is completely unentangled, k = 1 completely entangled (n >= 2).
  static ClassLabel from_block_count(std::size_t k, std::size_t n);
  std::string to_string() const;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

std::string_view to_string(ClassKind kind);
std::optional<ClassKind> class_kind_from_string(std::string_view name);

/// Symmetric, loop-free adjacency over particles 0..n-1.
class EntanglementGraph {
 public:
  EntanglementGraph() = default;
  explicit EntanglementGraph(std::size_t n) : n_(n), adj_(n * n, false) {}

  std::size_t num_vertices() const { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const { return adj_[i * n_ + j]; }
  void set_edge(std::size_t i, std::size_t j, bool present);

  /// Edges (i, j) with i < j, lexicographic.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  bool is_complete() const;
  bool is_empty() const { return edges().empty(); }

  friend bool operator==(const EntanglementGraph&, const EntanglementGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> adj_;
};

enum class PartialityKind { NonEntangled, Partial, Total };

std::string_view to_string(PartialityKind kind);
std::optional<PartialityKind> partiality_kind_from_string(std::string_view name);

struct PartialityFlag {
  PartialityKind kind = PartialityKind::NonEntangled;
  std::size_t rank = 1;
  std::size_t full_dim = 1;
  friend bool operator==(const PartialityFlag&, const PartialityFlag&) = default;
};

struct SubsystemPartiality {
  ParticleSet subsystem;
  PartialityFlag flag;
  friend bool operator==(const SubsystemPartiality&, const SubsystemPartiality&) = default;
};

/// A proper subsystem whose reduced state is a product across `cut`.
struct UtterWitness {
  ParticleSet subsystem;
  Bipartition cut;
  friend bool operator==(const UtterWitness&, const UtterWitness&) = default;
};

struct UtterVerdict {
  bool utter = false;
  // Set only when the state is completely entangled but some proper
  // subsystem factorizes; the lexicographically smallest (subsystem, cut).
  std::optional<UtterWitness> witness;
  ClassLabel label;
  friend bool operator==(const UtterVerdict&, const UtterVerdict&) = default;
};

struct EntanglementReport {
  std::size_t num_particles = 0;
  ClassLabel label;
  Partition finest;
  EntanglementGraph pairwise;
  // One entry per particle, then one per multi-particle finest block that is
  // a proper subsystem. Empty for a single particle.
  std::vector<SubsystemPartiality> partiality;
  UtterVerdict utter;
  AnalysisTolerances tolerances;
  friend bool operator==(const EntanglementReport&, const EntanglementReport&) = default;
};

// Product tests ------------------------------------------------------------

/// Schmidt number across `cut` is exactly one.
bool is_product_bipartition(const PureState& state, const Bipartition& cut,
                            double tol = kDefaultTol);

/// Factors (left, right) with left (x) right == state up to global phase, or
/// nothing when the state is entangled across `cut`.
std::optional<std::pair<PureState, PureState>> factor_pure(const PureState& state,
                                                           const Bipartition& cut,
                                                           double tol = kDefaultTol);

/// The reduced operator on `subset` is a rank-one projector. `subset` must be
/// a nonempty proper subset of the state's particles.
bool is_rank_one_reduced(const PureState& state, const ParticleSet& subset,
                         double tol = kDefaultTol);

/// rho equals the tensor product of its own marginals across `cut`, entrywise
/// within `tol`.
bool is_product_density(const DensityOperator& rho, const Bipartition& cut,
                        double tol = kDefaultTol);

// Structure ----------------------------------------------------------------

/// All 2^(m-1) - 1 cuts of an m-particle set, the smallest label always on the
/// left, ordered lexicographically by left side.
std::vector<Bipartition> enumerate_cuts(const ParticleSet& set);

/// Optional hook reordering the candidate cuts of each block before they are
/// tried. The outcome must not depend on it.
using CutOrder = std::function<void(std::vector<Bipartition>&)>;

Partition finest_partition(const PureState& state, double tol = kDefaultTol,
                           const CutOrder& order = {});

ClassLabel classify(const PureState& state, double tol = kDefaultTol);

/// Edge (i, j) iff the two-particle marginal is not a product. Requires N >= 2.
EntanglementGraph pairwise_graph(const PureState& state, double tol = kDefaultTol);

/// Requires N >= 2 (throws SystemSizeError otherwise).
UtterVerdict is_utterly_entangled(const PureState& state,
                                  const AnalysisTolerances& tols = {});
UtterVerdict is_utterly_entangled(const PureState& state, double tol);

/// Rank of the reduced operator on `subset` against its full dimension.
PartialityFlag partiality(const PureState& state, const ParticleSet& subset,
                          double tol = kDefaultTol);

EntanglementReport full_report(const PureState& state,
                               const AnalysisTolerances& tols = {});

}  // namespace qent
