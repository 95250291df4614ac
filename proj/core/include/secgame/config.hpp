#ifndef SECGAME_CONFIG_HPP
#define SECGAME_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secgame/degree_model.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/graph_sim.hpp"
#include "secgame/payoff.hpp"

namespace secgame {

/// Raw `[section]` / `key = value` text. Duplicate sections or keys are
/// ConfigError; comment lines start with '#'.
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

RawConfig parse_raw_config(const std::string& text);

/// Which starting profiles a solve run tries.
enum class StartKind { zero, one, half, random_start };

std::string to_string(StartKind s);

struct GraphSettings {
    int n = 0;
    DegreeDistribution law;
    double r_target = 0.0;
    double tolerance = 0.02;
    long long rewire_budget = 200'000;
};

/// A fully validated experiment description. Every module precondition that
/// can be checked from the file alone is checked at load time; unknown
/// sections or keys are errors listing the offenders.
struct ExperimentConfig {
    std::string kind;                     // solve | enumerate | association-audit |
                                          // lemma-suite | expost-validate
    std::string name;
    std::uint64_t seed = 1;
    std::string output_dir;               // empty = resolve from env/cwd at run time

    std::optional<PayoffModel> model;
    std::optional<NeighborBeliefs> beliefs;
    int grid_resolution = 21;
    SolverConfig solver;
    std::vector<StartKind> starts{StartKind::zero, StartKind::one, StartKind::half,
                                  StartKind::random_start};
    int random_starts = 2;

    int association_subset = 1;
    int association_functions = 4;

    std::optional<GraphSettings> graph;
    int expost_trials = 200;

    std::string sweep_parameter;          // lambda | cost_scale | r_target | resolution
    std::vector<double> sweep_values;

    /// Canonical text of the resolved config, embedded in run manifests so a
    /// run can be reproduced from its output directory alone.
    std::string canonical_text() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Grid for this config: binary games force the two-point grid.
ActionGrid config_grid(const ExperimentConfig& cfg);

} // namespace secgame

#endif
