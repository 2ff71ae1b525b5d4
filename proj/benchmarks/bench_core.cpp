#include <benchmark/benchmark.h>

#include <random>

#include "generank/aggregation.hpp"
#include "generank/diffusion.hpp"
#include "generank/madm.hpp"
#include "generank/pipeline.hpp"
#include "generank/shortest_path.hpp"
#include "synthetic.hpp"

using namespace generank;

namespace {

testing::SyntheticCorpus corpus_of(benchmark::State &state) {
    const auto background = static_cast<std::size_t>(state.range(0));
    return testing::planted_corpus({.module_size = 40, .background_size = background, .seed = 3});
}

void BM_DiffuseColumn(benchmark::State &state) {
    const auto c = corpus_of(state);
    const auto w = column_normalize(c.network);
    const auto seeds = map_seeds(c.network, c.module);
    for (auto _ : state) benchmark::DoNotOptimize(diffuse(w, seeds, {}));
    state.counters["nodes"] = static_cast<double>(c.network.node_count());
}
BENCHMARK(BM_DiffuseColumn)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_DiffuseSymmetric(benchmark::State &state) {
    const auto c = corpus_of(state);
    const auto w = symmetric_normalize(c.network);
    const auto seeds = map_seeds(c.network, c.module);
    for (auto _ : state) benchmark::DoNotOptimize(diffuse(w, seeds, {}));
}
BENCHMARK(BM_DiffuseSymmetric)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_SeedPathTableBuild(benchmark::State &state) {
    const auto c = corpus_of(state);
    const auto seeds = map_seeds(c.network, c.module);
    for (auto _ : state) benchmark::DoNotOptimize(SeedPathTable(c.network, seeds));
}
BENCHMARK(BM_SeedPathTableBuild)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SeedPathTableScore(benchmark::State &state) {
    const auto c = corpus_of(state);
    const auto seeds = map_seeds(c.network, c.module);
    const SeedPathTable table(c.network, seeds);
    const auto fold = seeds.without(seeds.indices.front());
    for (auto _ : state) benchmark::DoNotOptimize(table.score(fold));
}
BENCHMARK(BM_SeedPathTableScore)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_OrderStatisticsQ(benchmark::State &state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> r(static_cast<std::size_t>(state.range(0)));
    for (auto &x : r) x = u(rng);
    std::sort(r.begin(), r.end());
    for (auto _ : state) benchmark::DoNotOptimize(order_statistics_q(r));
}
BENCHMARK(BM_OrderStatisticsQ)->Arg(4)->Arg(16);

void BM_AnpWeights(benchmark::State &state) {
    const auto sm = default_supermatrix(pairwise_from_ordering(default_criteria_order()));
    for (auto _ : state) benchmark::DoNotOptimize(anp_weights(sm));
}
BENCHMARK(BM_AnpWeights);

void BM_EvaluateTopsisAnp(benchmark::State &state) {
    const auto c = corpus_of(state);
    const auto seeds = map_seeds(c.network, c.module);
    const PipelineConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(c.network, seeds, c.positions, EvidenceInputs{}, cfg));
}
BENCHMARK(BM_EvaluateTopsisAnp)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
