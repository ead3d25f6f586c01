#include <benchmark/benchmark.h>

#include <numeric>

#include "qent/analysis.hpp"
#include "qent/corpus.hpp"
#include "qent/linalg.hpp"
#include "random_states.hpp"

namespace {

using namespace qent;

std::vector<std::size_t> first_half(std::size_t n) {
  std::vector<std::size_t> v(n / 2);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void BM_ReduceHalf(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  testing::Rng rng(1);
  const auto s = testing::random_state(std::vector<std::size_t>(n, 2), rng);
  const auto keep = s.particles().subset(first_half(n));
  for (auto _ : st) benchmark::DoNotOptimize(reduce(s, keep));
}
BENCHMARK(BM_ReduceHalf)->DenseRange(6, 12, 2);

void BM_ReduceDensityToOne(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  testing::Rng rng(2);
  const auto s = testing::random_state(std::vector<std::size_t>(n, 2), rng);
  const auto rho = reduce(s, s.particles().subset(first_half(n)));
  const std::vector<std::size_t> one{0};
  const auto keep = s.particles().subset(one);
  for (auto _ : st) benchmark::DoNotOptimize(reduce_density(rho, keep));
}
BENCHMARK(BM_ReduceDensityToOne)->DenseRange(6, 12, 2);

void BM_SchmidtHalf(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  testing::Rng rng(3);
  const auto s = testing::random_state(std::vector<std::size_t>(n, 2), rng);
  const auto cut = Bipartition::of(s.particles(), first_half(n));
  for (auto _ : st) benchmark::DoNotOptimize(schmidt(s, cut));
}
BENCHMARK(BM_SchmidtHalf)->DenseRange(6, 12, 2);

// Worst case for the exhaustive search: no cut factorizes, so every one of
// the 2^(n-1) - 1 cuts is tried.
void BM_FinestPartitionEntangled(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  testing::Rng rng(4);
  const auto s = testing::random_state(std::vector<std::size_t>(n, 2), rng);
  for (auto _ : st) benchmark::DoNotOptimize(finest_partition(s));
}
BENCHMARK(BM_FinestPartitionEntangled)->DenseRange(4, 10, 2);

void BM_FinestPartitionBlocks(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  testing::Rng rng(5);
  const auto s = testing::random_block_product(n, 2, rng).state;
  for (auto _ : st) benchmark::DoNotOptimize(finest_partition(s));
}
BENCHMARK(BM_FinestPartitionBlocks)->DenseRange(4, 10, 2);

void BM_FullReportStar(benchmark::State& st) {
  const auto s = state_star();
  for (auto _ : st) benchmark::DoNotOptimize(full_report(s));
}
BENCHMARK(BM_FullReportStar);

void BM_FullReportGhzPositions(benchmark::State& st) {
  const auto s = state_ghz_positions();
  for (auto _ : st) benchmark::DoNotOptimize(full_report(s));
}
BENCHMARK(BM_FullReportGhzPositions);

}  // namespace

BENCHMARK_MAIN();
