#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "secgame/errors.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/rng.hpp"

using namespace secgame;

namespace {

// Four-outcome oracle for a binary game with two independent neighbors, each
// investing with probability p.
double binary_two_neighbor_oracle(const PayoffModel& m, double p, double own) {
    double total = 0.0;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            double prob = (a ? p : 1 - p) * (b ? p : 1 - p);
            total += prob * utility(m, own, {double(a), double(b)});
        }
    return total;
}

StrategyProfile uniform_invest_profile(const ActionGrid& grid, int max_degree, double p) {
    StrategyProfile profile(grid);
    for (int d = 1; d <= max_degree; ++d) profile.set_law(d, {1 - p, p});
    return profile;
}

} // namespace

TEST_CASE("action grid validates and indexes its points") {
    CHECK_THROWS_AS(ActionGrid({0.0, 0.5}), std::invalid_argument);        // last != 1
    CHECK_THROWS_AS(ActionGrid({0.1, 1.0}), std::invalid_argument);        // first != 0
    CHECK_THROWS_AS(ActionGrid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    ActionGrid g = ActionGrid::uniform(5);
    CHECK(g.size() == 5);
    CHECK(g[1] == doctest::Approx(0.25));
    CHECK(g.index_of(0.75) == 3);
    CHECK_THROWS_AS(g.index_of(0.3), std::invalid_argument);
}

TEST_CASE("strategy profile laws and summaries") {
    ActionGrid g = ActionGrid::uniform(3);
    StrategyProfile profile(g);
    profile.set_pure(1, 2);
    profile.set_law(2, {0.5, 0.0, 0.5});
    CHECK_THROWS_AS(profile.set_law(3, std::vector<double>{0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(profile.set_law(3, std::vector<double>{0.5, 0.2, 0.2}),
                    std::invalid_argument);

    CHECK(profile.degrees() == std::vector<int>{1, 2});
    CHECK(profile.mean_action(1) == doctest::Approx(1.0));
    CHECK(profile.mean_action(2) == doctest::Approx(0.5));
    CHECK(profile.invest_probability(2) == doctest::Approx(0.5));
    CHECK(profile.support(2) == std::vector<int>{0, 2});
    int idx = -1;
    CHECK(profile.is_pure(1, &idx));
    CHECK(idx == 2);
    CHECK_FALSE(profile.is_pure(2));
}

TEST_CASE("stochastic dominance comparisons") {
    std::vector<double> low = {0.7, 0.3, 0.0};
    std::vector<double> high = {0.2, 0.3, 0.5};
    CHECK(fosd_direction(low, high) == 1);
    CHECK(fosd_direction(high, low) == -1);
    CHECK(fosd_direction(low, low) == 0);
    std::vector<double> cross_a = {0.5, 0.0, 0.5};
    std::vector<double> cross_b = {0.0, 1.0, 0.0};
    CHECK_FALSE(fosd_direction(cross_a, cross_b).has_value());
}

TEST_CASE("profile monotonicity classification") {
    ActionGrid g = ActionGrid::uniform(3);
    StrategyProfile rising(g);
    rising.set_pure(1, 0);
    rising.set_pure(2, 1);
    rising.set_pure(3, 2);
    CHECK(classify_profile_monotonicity(rising) == Monotonicity::non_decreasing);

    StrategyProfile falling(g);
    falling.set_pure(1, 2);
    falling.set_pure(2, 2);
    falling.set_pure(3, 0);
    CHECK(classify_profile_monotonicity(falling) == Monotonicity::non_increasing);

    StrategyProfile flat(g);
    flat.set_pure(1, 1);
    flat.set_pure(2, 1);
    CHECK(classify_profile_monotonicity(flat) == Monotonicity::constant);

    StrategyProfile wiggle(g);
    wiggle.set_pure(1, 0);
    wiggle.set_pure(2, 2);
    wiggle.set_pure(3, 0);
    CHECK(classify_profile_monotonicity(wiggle) == Monotonicity::non_monotone);
}

TEST_CASE("sequence monotonicity classification") {
    CHECK(classify_sequence_monotonicity({1.0, 1.0, 1.0}, 1e-9) == Monotonicity::constant);
    CHECK(classify_sequence_monotonicity({1.0, 1.0, 2.0}, 1e-9) == Monotonicity::non_decreasing);
    CHECK(classify_sequence_monotonicity({2.0, 1.5, 1.5}, 1e-9) == Monotonicity::non_increasing);
    CHECK(classify_sequence_monotonicity({1.0, 2.0, 1.0}, 1e-9) == Monotonicity::non_monotone);
}

TEST_CASE("exact value: single-term enumeration, hand-checkable") {
    // One neighbor of known degree playing 0.4 for sure.
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::quadratic, 1.0);
    NeighborBeliefs b = NeighborBeliefs::regular({1}, 1);
    ActionGrid g({0.0, 0.4, 0.5, 1.0});
    StrategyProfile profile(g);
    profile.set_pure(1, 1);
    CHECK(expected_utility_exact(m, b, profile, 1, 0.5) == doctest::Approx(0.45));
}

TEST_CASE("exact value: binary game with two coin-flip neighbors") {
    PayoffModel m = PayoffModel::best_shot(0.3);
    NeighborBeliefs b = NeighborBeliefs::independent(2, {0.0, 0.0, 1.0});
    ActionGrid g = ActionGrid::binary();
    StrategyProfile profile = uniform_invest_profile(g, 2, 0.5);
    // Oracle: protected unless both neighbors stay out, 1 - 0.25 = 0.75.
    double oracle = binary_two_neighbor_oracle(m, 0.5, 0.0);
    CHECK(oracle == doctest::Approx(0.75));
    CHECK(expected_utility_exact(m, b, profile, 2, 0.0) == doctest::Approx(0.75));
}

TEST_CASE("lambda zero reduces every expected utility to the solo payoff") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 0.0, CostFamily::linear, 0.3);
    NeighborBeliefs b = NeighborBeliefs::independent(3, {0.0, 0.2, 0.3, 0.5});
    ActionGrid g = ActionGrid::uniform(5);
    StrategyProfile profile(g);
    for (int d = 1; d <= 3; ++d) profile.set_pure(d, d % g.size());
    for (int d = 1; d <= 3; ++d)
        for (int i = 0; i < g.size(); ++i) {
            double x = g[i];
            CHECK(expected_utility_exact(m, b, profile, d, x) ==
                  doctest::Approx(std::pow(x, 0.5) - 0.3 * x).epsilon(1e-12));
        }
}

TEST_CASE("row evaluation matches the single-action path") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.7, CostFamily::quadratic,
                                     0.5);
    std::map<int, std::vector<double>> rows;
    rows[1] = {0.0, 0.3, 0.7, 0.0};
    rows[2] = {0.0, 0.2, 0.5, 0.3};
    rows[3] = {0.0, 0.0, 0.4, 0.6};
    NeighborBeliefs b = NeighborBeliefs::conditional(3, rows);
    ActionGrid g = ActionGrid::uniform(5);
    StrategyProfile profile(g);
    profile.set_law(1, {0.2, 0.2, 0.2, 0.2, 0.2});
    profile.set_pure(2, 3);
    profile.set_law(3, {0.0, 0.5, 0.0, 0.5, 0.0});
    for (int d = 1; d <= 3; ++d) {
        std::vector<double> row = expected_utility_row(m, b, profile, d);
        REQUIRE(static_cast<int>(row.size()) == g.size());
        for (int i = 0; i < g.size(); ++i)
            CHECK(row[static_cast<std::size_t>(i)] ==
                  doctest::Approx(expected_utility_exact(m, b, profile, d, g[i]))
                      .epsilon(1e-12));
    }
}

TEST_CASE("full joint beliefs enumerate the stored tuples") {
    PayoffModel m = PayoffModel::best_shot(0.2);
    JointTable joint;
    joint[{1, 2}] = 0.25;
    joint[{2, 1}] = 0.25;
    joint[{2, 2}] = 0.5;
    std::map<int, JointTable> joints;
    joints[2] = joint;
    NeighborBeliefs b = NeighborBeliefs::full_joint(2, joints);
    ActionGrid g = ActionGrid::binary();
    StrategyProfile profile(g);
    profile.set_law(1, {0.0, 1.0});   // degree-1 neighbors always invest
    profile.set_law(2, {1.0, 0.0});   // degree-2 neighbors never invest
    // P(at least one degree-1 neighbor) = 0.5, so EU(x=0) = 0.5.
    CHECK(expected_utility_exact(m, b, profile, 2, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("missing profile degrees are reported, not silently zeroed") {
    PayoffModel m = PayoffModel::best_shot(0.2);
    NeighborBeliefs b = NeighborBeliefs::independent(2, {0.0, 0.5, 0.5});
    StrategyProfile profile(ActionGrid::binary());
    profile.set_pure(2, 0);   // degree 1 missing
    CHECK_THROWS_AS(expected_utility_exact(m, b, profile, 2, 0.0), std::invalid_argument);
}

TEST_CASE("enumeration budget refusal points at the sampling path") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.2);
    NeighborBeliefs b = NeighborBeliefs::independent(6, {0.0, 0.1, 0.1, 0.2, 0.2, 0.2, 0.2});
    ActionGrid g = ActionGrid::uniform(21);
    StrategyProfile profile(g);
    std::vector<double> spread(21, 1.0 / 21);
    for (int d = 1; d <= 6; ++d) profile.set_law(d, spread);
    EnumerationBudget tiny{1000};
    CHECK_THROWS_AS(expected_utility_exact(m, b, profile, 6, 0.5, tiny), BudgetError);
    try {
        expected_utility_exact(m, b, profile, 6, 0.5, tiny);
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
    }
}

TEST_CASE("budget counts support, not nominal resolution") {
    // Nominal lattice (support * resolution)^d is huge, but point-mass laws
    // and a thin belief row keep the true term count tiny.
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.2);
    NeighborBeliefs b =
        NeighborBeliefs::independent(6, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    ActionGrid g = ActionGrid::uniform(101);
    StrategyProfile profile(g);
    for (int d = 1; d <= 6; ++d) profile.set_pure(d, 50);
    EnumerationBudget tiny{100};
    CHECK_NOTHROW(expected_utility_exact(m, b, profile, 6, 0.5, tiny));
}

TEST_CASE("sampling estimator: degenerate inputs give exact answers") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::quadratic, 1.0);
    NeighborBeliefs b = NeighborBeliefs::regular({1}, 1);
    ActionGrid g({0.0, 0.4, 0.5, 1.0});
    StrategyProfile profile(g);
    profile.set_pure(1, 1);
    McEstimate est = expected_utility_mc(m, b, profile, 1, 0.5, 500, 9);
    CHECK(est.estimate == doctest::Approx(0.45));
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK(est.samples == 500);
}

TEST_CASE("sampling estimator: deterministic per seed, sensitive to it") {
    PayoffModel m = PayoffModel::best_shot(0.3);
    NeighborBeliefs b = NeighborBeliefs::independent(3, {0.0, 0.3, 0.4, 0.3});
    ActionGrid g = ActionGrid::binary();
    StrategyProfile profile = uniform_invest_profile(g, 3, 0.4);
    McEstimate a = expected_utility_mc(m, b, profile, 3, 0.0, 400, 123);
    McEstimate again = expected_utility_mc(m, b, profile, 3, 0.0, 400, 123);
    CHECK(a.estimate == again.estimate);
    CHECK(a.std_error == again.std_error);
    McEstimate other = expected_utility_mc(m, b, profile, 3, 0.0, 400, 124);
    CHECK(a.estimate != other.estimate);
    CHECK_THROWS_AS(expected_utility_mc(m, b, profile, 3, 0.0, 50, 1), std::invalid_argument);
}

TEST_CASE("sampling estimator tracks the exact value across random cells") {
    Rng rng(2025);
    int within = 0, total = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int max_degree = rng.uniform_int(2, 3);
        std::vector<double> pmf(static_cast<std::size_t>(max_degree) + 1, 0.0);
        double mass = 0.0;
        for (int k = 1; k <= max_degree; ++k) {
            pmf[static_cast<std::size_t>(k)] = rng.uniform01() + 0.05;
            mass += pmf[static_cast<std::size_t>(k)];
        }
        for (double& x : pmf) x /= mass;
        NeighborBeliefs b = NeighborBeliefs::independent(max_degree, pmf);
        PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5 + 0.5 * rng.uniform01(),
                                         rng.uniform01(), CostFamily::quadratic,
                                         0.2 + 0.5 * rng.uniform01());
        ActionGrid g = ActionGrid::uniform(5);
        StrategyProfile profile(g);
        for (int d = 1; d <= max_degree; ++d) profile.set_pure(d, rng.uniform_int(0, 4));
        int d = rng.uniform_int(1, max_degree);
        double x = g[rng.uniform_int(0, 4)];
        double exact = expected_utility_exact(m, b, profile, d, x);
        McEstimate est = expected_utility_mc(m, b, profile, d, x, 4000,
                                             derive_seed(2025, "cell", trial));
        ++total;
        if (std::fabs(est.estimate - exact) <= 4 * est.std_error + 1e-12) ++within;
    }
    // 4 standard errors ~ 99.99% per cell; demand all but one of 40.
    CHECK(within >= total - 1);
}

TEST_CASE("raising one degree's law never lowers expected utility") {
    // Positive externalities: shifting any neighbor law upward in the
    // dominance order can only help.
    PayoffModel m = PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.8, CostFamily::linear,
                                     0.2);
    std::map<int, std::vector<double>> rows;
    rows[1] = {0.0, 0.5, 0.5};
    rows[2] = {0.0, 0.3, 0.7};
    NeighborBeliefs b = NeighborBeliefs::conditional(2, rows);
    ActionGrid g = ActionGrid::uniform(5);
    StrategyProfile low(g);
    low.set_law(1, {0.4, 0.3, 0.3, 0.0, 0.0});
    low.set_pure(2, 1);
    StrategyProfile high(g);
    high.set_law(1, {0.1, 0.3, 0.3, 0.3, 0.0});   // dominates low's law at degree 1
    high.set_pure(2, 1);
    for (int d = 1; d <= 2; ++d)
        for (int i = 0; i < g.size(); ++i)
            CHECK(expected_utility_exact(m, b, high, d, g[i]) >=
                  expected_utility_exact(m, b, low, d, g[i]) - 1e-12);
}

TEST_CASE("table serialization columns") {
    ExpectedUtilityTable table;
    table.rows.push_back({1, 0.0, 0.25, 0.0});
    table.rows.push_back({2, 1.0, 0.125, 0.01});
    std::string path = "eu_table_test.csv";
    write_csv(table, path);
    FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof(line), f) != nullptr);
    CHECK(std::string(line) == "degree,action,value,std_error\n");
    REQUIRE(std::fgets(line, sizeof(line), f) != nullptr);
    CHECK(std::string(line) == "1,0,0.25,0\n");
    std::fclose(f);
    std::remove(path.c_str());
}

TEST_CASE("degree interaction: separable games hold both directions with equality") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 1.0, 0.0, CostFamily::quadratic, 0.5);
    NeighborBeliefs b = NeighborBeliefs::independent(3, {0.0, 0.4, 0.3, 0.3});
    ActionGrid g = ActionGrid::uniform(5);
    StrategyProfile profile(g);
    for (int d = 1; d <= 3; ++d) profile.set_pure(d, 2);   // constant profile
    DegreeInteractionReport rep =
        check_degree_complementarity(m, b, profile, {{1, 2}, {2, 3}});
    CHECK(rep.verdict == DegreeInteractionVerdict::both);
    CHECK(rep.tested_increasing);
    CHECK(rep.tested_decreasing);
    CHECK(rep.comparisons > 0);
}

TEST_CASE("degree interaction: monotonicity side conditions gate the tests") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.2);
    NeighborBeliefs b = NeighborBeliefs::independent(3, {0.0, 0.4, 0.3, 0.3});
    ActionGrid g = ActionGrid::uniform(3);

    StrategyProfile rising(g);
    rising.set_pure(1, 0);
    rising.set_pure(2, 1);
    rising.set_pure(3, 2);
    DegreeInteractionReport up = check_degree_complementarity(m, b, rising, {{1, 2}});
    CHECK(up.tested_increasing);
    CHECK_FALSE(up.tested_decreasing);

    StrategyProfile falling(g);
    falling.set_pure(1, 2);
    falling.set_pure(2, 1);
    falling.set_pure(3, 0);
    DegreeInteractionReport down = check_degree_complementarity(m, b, falling, {{1, 2}});
    CHECK(down.tested_decreasing);
    CHECK_FALSE(down.tested_increasing);

    StrategyProfile wiggle(g);
    wiggle.set_pure(1, 0);
    wiggle.set_pure(2, 2);
    wiggle.set_pure(3, 0);
    CHECK_THROWS_AS(check_degree_complementarity(m, b, wiggle, {{1, 2}}), std::domain_error);
}

TEST_CASE("degree interaction: binary game with falling profile narrows differences") {
    // Higher degree means more chances someone else protects, which shrinks
    // the gain from investing: the narrowing test must pass.
    PayoffModel m = PayoffModel::best_shot(0.3);
    NeighborBeliefs b = NeighborBeliefs::independent(3, {0.0, 0.2, 0.4, 0.4});
    ActionGrid g = ActionGrid::binary();
    StrategyProfile profile(g);
    profile.set_law(1, {0.2, 0.8});
    profile.set_law(2, {0.5, 0.5});
    profile.set_law(3, {0.7, 0.3});
    DegreeInteractionReport rep =
        check_degree_complementarity(m, b, profile, {{1, 2}, {2, 3}, {1, 3}});
    CHECK(rep.tested_decreasing);
    CHECK(rep.decreasing_holds);
    CHECK(rep.verdict == DegreeInteractionVerdict::substitutes);
}
