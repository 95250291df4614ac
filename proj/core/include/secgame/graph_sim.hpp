#ifndef SECGAME_GRAPH_SIM_HPP
#define SECGAME_GRAPH_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "secgame/degree_model.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/payoff.hpp"

namespace secgame {
class Rng;

/// Simple undirected graph (no self-loops, no multi-edges) with sampling
/// provenance attached.
struct GraphInstance {
    int n = 0;
    std::vector<std::vector<int>> adjacency;   // sorted neighbor lists
    std::vector<int> degrees;
    long long edge_count = 0;
    std::uint64_t seed = 0;
    double r_target = 0.0;
    double r_achieved = 0.0;
    bool r_degenerate = false;   // endpoint degrees carry no variance

    /// Nodes per degree class.
    std::map<int, int> degree_histogram() const;
};

/// Nodes within `k` hops of `node`, built by expanding the neighborhood one
/// hop at a time; with k >= 2 and at least one neighbor the node itself is a
/// member unless `exclude_self`. Result is sorted.
std::vector<int> k_hop_neighborhood(const GraphInstance& g, int node, int k,
                                    bool exclude_self = false);

/// Degree correlation across edge endpoints (both orientations). Graphs whose
/// endpoint degrees have zero variance get r = 0 with `degenerate` set.
double pearson_degree_correlation(const GraphInstance& g, bool* degenerate = nullptr);

struct AssortativityTarget {
    DegreeDistribution law;
    double r = 0.0;
    double tolerance = 0.02;
    long long rewire_budget = 200'000;
};

/// Configuration-model draw of the degree sequence (an odd stub total bumps
/// one node's degree up by one), stub matching with bounded repair of
/// self-loops and multi-edges, then degree-preserving rewiring toward the
/// assortativity target. Throws GenerationError when repair or rewiring
/// budgets run out.
GraphInstance sample_graph(const AssortativityTarget& target, int n, std::uint64_t seed);

/// Degree-preserving two-edge swaps accepted only when they strictly shrink
/// |r - r_target|; returns the r value after each accepted swap. Stops at
/// |r - r_target| <= tolerance or after `budget` proposals.
std::vector<double> rewire_toward_assortativity(GraphInstance& g, double r_target,
                                                double tolerance, long long budget, Rng& rng);

/// Degree-conditional neighbor-degree frequencies observed in the graph,
/// packaged as beliefs. Throws std::invalid_argument on an edgeless graph.
NeighborBeliefs empirical_beliefs(const GraphInstance& g);

struct ExPostReport {
    std::vector<int> degrees;            // degree classes present in the graph
    std::vector<double> mean_payoff;     // per class, averaged over nodes and trials
    std::vector<double> std_error;       // between-node dispersion of per-node means
    std::vector<int> node_counts;        // (one-node classes: that node's trial error)
    int trials = 0;
};

/// Realized average payoff per degree class when every node samples its
/// action from `profile` independently each trial. Per-trial seeds are
/// derived from (seed, trial index), so the report does not depend on
/// `workers`. The profile must cover every degree present in the graph.
ExPostReport expost_payoffs(const GraphInstance& g, const PayoffModel& model,
                            const StrategyProfile& profile, int trials, std::uint64_t seed,
                            int workers = 1);

/// Plain text edge list with a '#' header carrying n and the sampling
/// provenance; edges one per line as "u v" with u < v.
void save_edge_list(const GraphInstance& g, const std::string& path);
GraphInstance load_edge_list(const std::string& path);

} // namespace secgame

#endif
