#include <benchmark/benchmark.h>

#include "secgame/degree_model.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/instances.hpp"
#include "secgame/payoff.hpp"

using namespace secgame;

namespace {

// Mixed profile whose law at every degree spreads over three grid points, so
// the exact enumerator walks a realistic product lattice.
StrategyProfile spread_profile(const ActionGrid& grid, const std::vector<int>& degrees) {
    StrategyProfile profile(grid);
    for (int d : degrees) {
        std::vector<double> law(static_cast<std::size_t>(grid.size()), 0.0);
        law[0] = 0.2;
        law[static_cast<std::size_t>(grid.size() / 2)] = 0.5;
        law[static_cast<std::size_t>(grid.size() - 1)] = 0.3;
        profile.set_law(d, std::move(law));
    }
    return profile;
}

void BM_exact_eu(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    NeighborBeliefs beliefs = independent_uniform(4);
    PayoffModel model =
        PayoffModel::sum(BenefitFamily::power, 0.5, 0.6, CostFamily::quadratic, 0.4);
    ActionGrid grid = ActionGrid::uniform(21);
    StrategyProfile profile = spread_profile(grid, beliefs.own_degrees());
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_utility_exact(model, beliefs, profile, degree, 0.5));
}
BENCHMARK(BM_exact_eu)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_eu_row(benchmark::State& state) {
    const int resolution = static_cast<int>(state.range(0));
    NeighborBeliefs beliefs = independent_uniform(3);
    PayoffModel model =
        PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.5, CostFamily::linear, 0.3);
    ActionGrid grid = ActionGrid::uniform(resolution);
    StrategyProfile profile = spread_profile(grid, beliefs.own_degrees());
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_utility_row(model, beliefs, profile, 3));
}
BENCHMARK(BM_eu_row)->Arg(11)->Arg(21)->Arg(41);

void BM_mc_eu(benchmark::State& state) {
    const int samples = static_cast<int>(state.range(0));
    NeighborBeliefs beliefs = independent_uniform(4);
    PayoffModel model =
        PayoffModel::sum(BenefitFamily::power, 0.5, 0.6, CostFamily::quadratic, 0.4);
    ActionGrid grid = ActionGrid::uniform(21);
    StrategyProfile profile = spread_profile(grid, beliefs.own_degrees());
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            expected_utility_mc(model, beliefs, profile, 3, 0.5, samples, seed++));
    }
}
BENCHMARK(BM_mc_eu)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
