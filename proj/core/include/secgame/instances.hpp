#ifndef SECGAME_INSTANCES_HPP
#define SECGAME_INSTANCES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "secgame/degree_model.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/payoff.hpp"

namespace secgame {

/// A fully specified symmetric game: model, beliefs, action grid, and the
/// degree types in play.
struct Instance {
    std::string name;
    PayoffModel model;
    NeighborBeliefs beliefs;
    ActionGrid grid;
    std::vector<int> degrees;
    AssociationVerdict intended_association = AssociationVerdict::neither;
    /// Direction the action profile is expected to take in equilibrium,
    /// by the game's interaction class: substitutes lean non-increasing,
    /// separable games are degree-indifferent.
    bool expect_non_increasing_actions = false;
    SolverConfig solver;
};

/// Conditional belief rows built from exponentially tilted likelihood ratios,
/// so rows for higher own degrees dominate (increasing=true) or are dominated
/// (increasing=false) in the first-order stochastic sense, strictly.
NeighborBeliefs fosd_family(const std::vector<int>& degrees, int max_degree, double strength,
                            bool increasing);

/// Uniform neighbor-degree law over {1..max_degree}, same for every own degree.
NeighborBeliefs independent_uniform(int max_degree);

/// The six-instance reference suite: a strict-substitutes game and an
/// additively separable game, each paired with positively associated,
/// negatively associated, and independent beliefs over degrees {1,2,3}.
std::vector<Instance> solver_suite();

/// One randomized audit case for the interaction-transfer property: a game
/// whose strategic classification, association verdict, and profile direction
/// jointly satisfy the transfer hypotheses by construction.
struct AuditCase {
    Instance instance;
    StrategyProfile profile;
    /// True when the case exercises the complements-side hypothesis
    /// (separable game + positive association + non-decreasing profile);
    /// false for the substitutes side.
    bool complements_side = false;
    int subset_size = 1;
};

/// Deterministic family of `count` audit cases, alternating sides.
std::vector<AuditCase> degree_interaction_suite(int count, std::uint64_t seed);

} // namespace secgame

#endif
