#include <benchmark/benchmark.h>

#include "secgame/degree_model.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/instances.hpp"
#include "secgame/payoff.hpp"

using namespace secgame;

namespace {

void BM_solve_binary(benchmark::State& state) {
    const int max_degree = static_cast<int>(state.range(0));
    std::vector<int> degrees;
    for (int d = 1; d <= max_degree; ++d) degrees.push_back(d);
    NeighborBeliefs beliefs = independent_uniform(max_degree);
    PayoffModel model = PayoffModel::best_shot(0.3);
    SolverConfig config;
    config.damping = 0.02;
    config.max_iterations = 1500;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_symmetric_bne(model, beliefs, ActionGrid::binary(), config));
}
BENCHMARK(BM_solve_binary)->Arg(2)->Arg(3)->Arg(4);

void BM_solve_continuous(benchmark::State& state) {
    const int resolution = static_cast<int>(state.range(0));
    NeighborBeliefs beliefs = independent_uniform(3);
    PayoffModel model =
        PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::quadratic, 0.4);
    SolverConfig config;
    config.damping = 0.5;
    config.max_iterations = 2000;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_symmetric_bne(model, beliefs, ActionGrid::uniform(resolution), config));
}
BENCHMARK(BM_solve_continuous)->Arg(11)->Arg(21)->Arg(41);

void BM_enumerate_binary(benchmark::State& state) {
    const int levels = static_cast<int>(state.range(0));
    NeighborBeliefs beliefs = independent_uniform(3);
    PayoffModel model = PayoffModel::best_shot(0.2);
    SolverConfig config;
    config.mixing_levels = levels;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            enumerate_symmetric_equilibria(model, beliefs, ActionGrid::binary(), config));
}
BENCHMARK(BM_enumerate_binary)->Arg(5)->Arg(11)->Arg(21);

} // namespace

BENCHMARK_MAIN();
