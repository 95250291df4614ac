#include <benchmark/benchmark.h>

#include "secgame/degree_model.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/graph_sim.hpp"
#include "secgame/payoff.hpp"

using namespace secgame;

namespace {

AssortativityTarget flat_target(double r) {
    return AssortativityTarget{DegreeDistribution({0.0, 0.3, 0.4, 0.3}), r, 0.05, 200'000};
}

void BM_sample_graph(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    AssortativityTarget target = flat_target(0.0);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sample_graph(target, n, seed++));
}
BENCHMARK(BM_sample_graph)->Arg(200)->Arg(500)->Arg(2000);

void BM_sample_graph_rewired(benchmark::State& state) {
    AssortativityTarget target = flat_target(-0.15);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sample_graph(target, 500, seed++));
}
BENCHMARK(BM_sample_graph_rewired);

void BM_expost_payoffs(benchmark::State& state) {
    const int workers = static_cast<int>(state.range(0));
    GraphInstance g = sample_graph(flat_target(0.0), 500, 7);
    PayoffModel model = PayoffModel::best_shot(0.3);
    StrategyProfile profile(ActionGrid::binary());
    for (const auto& [d, _] : g.degree_histogram()) profile.set_law(d, {0.4, 0.6});
    for (auto _ : state)
        benchmark::DoNotOptimize(expost_payoffs(g, model, profile, 100, 11, workers));
}
BENCHMARK(BM_expost_payoffs)->Arg(1)->Arg(4);

void BM_empirical_beliefs(benchmark::State& state) {
    GraphInstance g = sample_graph(flat_target(0.0), 2000, 7);
    for (auto _ : state) benchmark::DoNotOptimize(empirical_beliefs(g));
}
BENCHMARK(BM_empirical_beliefs);

} // namespace

BENCHMARK_MAIN();
