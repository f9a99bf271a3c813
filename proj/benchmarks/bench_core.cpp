#include <benchmark/benchmark.h>

#include <vector>

#include "lexcausal/ci_tests.hpp"
#include "lexcausal/distance.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/pc_stable.hpp"
#include "lexcausal/pca.hpp"
#include "lexcausal/random.hpp"

using namespace lexcausal;

namespace {

RowMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = standard_normal(rng);
  return m;
}

// type -> {semantic_change, freq_shift, polysemy} -> log_frequency plus four isolated columns.
Dataset mixed_table(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> t(n), s(n), z(n), p(n), y(n);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = bernoulli(rng, 0.5) ? 1.0 : 0.0;
    s[i] = 0.5 + 0.1 * t[i] + 0.1 * standard_normal(rng);
    z[i] = t[i] + standard_normal(rng);
    p[i] = static_cast<double>(uniform_index(rng, 2) + static_cast<std::size_t>(t[i]));
    y[i] = 0.5 * p[i] + standard_normal(rng);
  }
  d.add_column("type", VariableKind::categorical, t);
  d.add_column("semantic_change", VariableKind::continuous, s);
  d.add_column("freq_shift", VariableKind::continuous, z);
  d.add_column("polysemy", VariableKind::categorical, p);
  d.add_column("log_frequency", VariableKind::continuous, y);
  for (int k = 0; k < 4; ++k) {
    std::vector<double> noise(n);
    for (auto& v : noise) v = uniform_unit(rng);
    d.add_column("pos_" + std::to_string(k), VariableKind::continuous, noise);
  }
  return d;
}

void BM_Apd(benchmark::State& state) {
  const auto n = state.range(0);
  const auto a = gaussian(n, 100, 1);
  const auto b = gaussian(n, 100, 2);
  for (auto _ : state) benchmark::DoNotOptimize(apd(a, b, DistanceMetric::combined_d2cos));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Apd)->Arg(150)->Arg(500)->Arg(1000);

void BM_PcaFit(benchmark::State& state) {
  const auto data = gaussian(state.range(0), 768, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fit_pca(data, 100));
}
BENCHMARK(BM_PcaFit)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Chi2MITest(benchmark::State& state) {
  const auto d = mixed_table(static_cast<std::size_t>(state.range(0)), 4);
  const MixedCITest test(d);
  const std::vector<std::size_t> z = {0, 3};
  for (auto _ : state) benchmark::DoNotOptimize(test.test(1, 4, z));
}
BENCHMARK(BM_Chi2MITest)->Arg(1000)->Arg(10000);

void BM_PcSkeleton(benchmark::State& state) {
  const auto d = mixed_table(static_cast<std::size_t>(state.range(0)), 5);
  const MixedCITest test(d);
  for (auto _ : state) benchmark::DoNotOptimize(run_pc_stable(test, {}));
}
BENCHMARK(BM_PcSkeleton)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
