#include "secgame/graph_sim.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "secgame/errors.hpp"
#include "secgame/rng.hpp"

namespace secgame {

std::map<int, int> GraphInstance::degree_histogram() const {
    std::map<int, int> h;
    for (int d : degrees) ++h[d];
    return h;
}

namespace {

void check_node(const GraphInstance& g, int node) {
    if (node < 0 || node >= g.n) throw std::invalid_argument("node index out of range");
}

std::vector<std::pair<int, int>> edge_list_of(const GraphInstance& g) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count));
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adjacency[static_cast<std::size_t>(u)])
            if (u < v) edges.emplace_back(u, v);
    return edges;
}

void rebuild_adjacency(GraphInstance& g, const std::vector<std::pair<int, int>>& edges) {
    g.adjacency.assign(static_cast<std::size_t>(g.n), {});
    for (const auto& [u, v] : edges) {
        g.adjacency[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    g.edge_count = static_cast<long long>(edges.size());
    g.degrees.resize(static_cast<std::size_t>(g.n));
    for (int u = 0; u < g.n; ++u)
        g.degrees[static_cast<std::size_t>(u)] =
            static_cast<int>(g.adjacency[static_cast<std::size_t>(u)].size());
}

// Correlation pieces over both edge orientations: mean and second moment of
// endpoint degrees, and the product sum S. Degrees never change during
// rewiring, so only S moves.
struct CorrelationParts {
    double mean = 0.0;        // average endpoint degree
    double sq_moment = 0.0;   // average squared endpoint degree
    double denom = 0.0;       // variance of endpoint degrees
    long long m = 0;          // edge count
};

CorrelationParts correlation_parts(const GraphInstance& g,
                                   const std::vector<std::pair<int, int>>& edges) {
    CorrelationParts parts;
    parts.m = static_cast<long long>(edges.size());
    if (parts.m == 0) return parts;
    double sum = 0.0, sumsq = 0.0;
    for (const auto& [u, v] : edges) {
        double du = g.degrees[static_cast<std::size_t>(u)];
        double dv = g.degrees[static_cast<std::size_t>(v)];
        sum += du + dv;
        sumsq += du * du + dv * dv;
    }
    parts.mean = sum / (2.0 * parts.m);
    parts.sq_moment = sumsq / (2.0 * parts.m);
    parts.denom = parts.sq_moment - parts.mean * parts.mean;
    return parts;
}

double product_sum(const GraphInstance& g, const std::vector<std::pair<int, int>>& edges) {
    double s = 0.0;
    for (const auto& [u, v] : edges)
        s += static_cast<double>(g.degrees[static_cast<std::size_t>(u)]) *
             static_cast<double>(g.degrees[static_cast<std::size_t>(v)]);
    return s;
}

double r_from_parts(const CorrelationParts& parts, double s_prod, bool* degenerate) {
    if (parts.m == 0 || parts.denom <= 1e-12) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    if (degenerate) *degenerate = false;
    return (s_prod / parts.m - parts.mean * parts.mean) / parts.denom;
}

} // namespace

std::vector<int> k_hop_neighborhood(const GraphInstance& g, int node, int k, bool exclude_self) {
    check_node(g, node);
    if (k < 1) throw std::invalid_argument("k_hop_neighborhood: k must be >= 1");

    // One-hop sets, expanded hop by hop: the k-hop set is the union of the
    // (k-1)-hop sets of the node's neighbors together with the neighbors.
    std::set<int> current(g.adjacency[static_cast<std::size_t>(node)].begin(),
                          g.adjacency[static_cast<std::size_t>(node)].end());
    for (int hop = 2; hop <= k; ++hop) {
        std::set<int> next = current;
        for (int member : current)
            for (int w : g.adjacency[static_cast<std::size_t>(member)]) next.insert(w);
        current.swap(next);
    }
    if (exclude_self) current.erase(node);
    return {current.begin(), current.end()};
}

double pearson_degree_correlation(const GraphInstance& g, bool* degenerate) {
    auto edges = edge_list_of(g);
    CorrelationParts parts = correlation_parts(g, edges);
    return r_from_parts(parts, product_sum(g, edges), degenerate);
}

std::vector<double> rewire_toward_assortativity(GraphInstance& g, double r_target,
                                                double tolerance, long long budget, Rng& rng) {
    std::vector<std::pair<int, int>> edges = edge_list_of(g);
    std::vector<double> trace;
    if (edges.size() < 2) return trace;

    std::vector<std::set<int>> adj(static_cast<std::size_t>(g.n));
    for (int u = 0; u < g.n; ++u)
        adj[static_cast<std::size_t>(u)] = {g.adjacency[static_cast<std::size_t>(u)].begin(),
                                            g.adjacency[static_cast<std::size_t>(u)].end()};

    CorrelationParts parts = correlation_parts(g, edges);
    double s_prod = product_sum(g, edges);
    bool degenerate = false;
    double r = r_from_parts(parts, s_prod, &degenerate);
    if (degenerate) return trace;   // swaps cannot move r when degrees are constant

    auto deg = [&](int u) { return static_cast<double>(g.degrees[static_cast<std::size_t>(u)]); };

    for (long long step = 0; step < budget && std::fabs(r - r_target) > tolerance; ++step) {
        std::size_t ei = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(edges.size()) - 1));
        std::size_t ej = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(edges.size()) - 1));
        if (ei == ej) continue;
        auto [u, v] = edges[ei];
        auto [x, y] = edges[ej];
        if (u == x || u == y || v == x || v == y) continue;

        // Two degree-preserving repairings of the endpoints.
        double base = deg(u) * deg(v) + deg(x) * deg(y);
        double delta_a = deg(u) * deg(x) + deg(v) * deg(y) - base;   // (u,x), (v,y)
        double delta_b = deg(u) * deg(y) + deg(v) * deg(x) - base;   // (u,y), (v,x)

        auto feasible_a = [&] {
            return !adj[static_cast<std::size_t>(u)].count(x) &&
                   !adj[static_cast<std::size_t>(v)].count(y);
        };
        auto feasible_b = [&] {
            return !adj[static_cast<std::size_t>(u)].count(y) &&
                   !adj[static_cast<std::size_t>(v)].count(x);
        };

        double best_delta = 0.0;
        int choice = 0;
        double err = std::fabs(r - r_target);
        for (int c = 1; c <= 2; ++c) {
            double delta = c == 1 ? delta_a : delta_b;
            bool ok = c == 1 ? feasible_a() : feasible_b();
            if (!ok) continue;
            double r_new = r_from_parts(parts, s_prod + delta, nullptr);
            if (std::fabs(r_new - r_target) < err) {
                err = std::fabs(r_new - r_target);
                best_delta = delta;
                choice = c;
            }
        }
        if (choice == 0) continue;

        adj[static_cast<std::size_t>(u)].erase(v);
        adj[static_cast<std::size_t>(v)].erase(u);
        adj[static_cast<std::size_t>(x)].erase(y);
        adj[static_cast<std::size_t>(y)].erase(x);
        int a2 = choice == 1 ? x : y;
        int b2 = choice == 1 ? y : x;
        adj[static_cast<std::size_t>(u)].insert(a2);
        adj[static_cast<std::size_t>(a2)].insert(u);
        adj[static_cast<std::size_t>(v)].insert(b2);
        adj[static_cast<std::size_t>(b2)].insert(v);
        edges[ei] = {std::min(u, a2), std::max(u, a2)};
        edges[ej] = {std::min(v, b2), std::max(v, b2)};

        s_prod += best_delta;
        r = r_from_parts(parts, s_prod, nullptr);
        trace.push_back(r);
    }

    rebuild_adjacency(g, edges);
    g.r_achieved = r;
    return trace;
}

GraphInstance sample_graph(const AssortativityTarget& target, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_graph: n must be >= 2");
    if (!(target.r >= -1.0 && target.r <= 1.0))
        throw std::invalid_argument("sample_graph: r target must lie in [-1, 1]");
    if (target.rewire_budget < 0)
        throw std::invalid_argument("sample_graph: rewire budget must be >= 0");

    Rng rng(derive_seed(seed, "graph"));
    GraphInstance g;
    g.n = n;
    g.seed = seed;
    g.r_target = target.r;

    // Degree sequence; an odd stub total bumps the first node that can take
    // one more edge.
    g.degrees.resize(static_cast<std::size_t>(n));
    long long stub_total = 0;
    for (int i = 0; i < n; ++i) {
        int d = static_cast<int>(rng.sample_pmf(target.law.pmf()));
        g.degrees[static_cast<std::size_t>(i)] = d;
        stub_total += d;
    }
    if (stub_total % 2 != 0) {
        bool fixed = false;
        for (int i = 0; i < n && !fixed; ++i) {
            if (g.degrees[static_cast<std::size_t>(i)] < target.law.max_degree()) {
                ++g.degrees[static_cast<std::size_t>(i)];
                fixed = true;
            }
        }
        if (!fixed) {
            for (int i = 0; i < n && !fixed; ++i) {
                if (g.degrees[static_cast<std::size_t>(i)] > 0) {
                    --g.degrees[static_cast<std::size_t>(i)];
                    fixed = true;
                }
            }
        }
        if (!fixed) throw GenerationError("sample_graph: cannot even out the stub total");
    }

    // Stub matching.
    std::vector<int> stubs;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < g.degrees[static_cast<std::size_t>(i)]; ++s) stubs.push_back(i);
    rng.shuffle(stubs);

    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> bad;   // self-loops and duplicates to repair
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
        int u = stubs[s], v = stubs[s + 1];
        if (u != v && !adj[static_cast<std::size_t>(u)].count(v)) {
            adj[static_cast<std::size_t>(u)].insert(v);
            adj[static_cast<std::size_t>(v)].insert(u);
            edges.emplace_back(u, v);
        } else {
            bad.emplace_back(u, v);
        }
    }

    // Repair: break a bad pair against a random good edge, degree counts
    // unchanged. Bounded attempts per pair.
    const int attempts_per_pair = 200;
    for (auto [u, v] : bad) {
        bool placed = false;
        for (int a = 0; a < attempts_per_pair && !placed; ++a) {
            if (edges.empty()) break;
            std::size_t k = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(edges.size()) - 1));
            auto [x, y] = edges[k];
            // Reconnect as (u,x) and (v,y).
            if (u == x || v == y) continue;
            if (adj[static_cast<std::size_t>(u)].count(x) ||
                adj[static_cast<std::size_t>(v)].count(y))
                continue;
            adj[static_cast<std::size_t>(x)].erase(y);
            adj[static_cast<std::size_t>(y)].erase(x);
            adj[static_cast<std::size_t>(u)].insert(x);
            adj[static_cast<std::size_t>(x)].insert(u);
            adj[static_cast<std::size_t>(v)].insert(y);
            adj[static_cast<std::size_t>(y)].insert(v);
            edges[k] = {u, x};
            edges.emplace_back(v, y);
            placed = true;
        }
        if (!placed)
            throw GenerationError(
                "sample_graph: could not repair the stub matching within the attempt budget; "
                "the degree law may be too concentrated for n=" +
                std::to_string(n));
    }

    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    rebuild_adjacency(g, edges);

    bool degenerate = false;
    g.r_achieved = pearson_degree_correlation(g, &degenerate);
    g.r_degenerate = degenerate;

    if (!degenerate && std::fabs(g.r_achieved - target.r) > target.tolerance &&
        target.rewire_budget > 0) {
        rewire_toward_assortativity(g, target.r, target.tolerance, target.rewire_budget, rng);
        g.r_achieved = pearson_degree_correlation(g, &degenerate);
        g.r_degenerate = degenerate;
        if (std::fabs(g.r_achieved - target.r) > target.tolerance)
            throw GenerationError("sample_graph: rewiring stalled at r=" +
                                  std::to_string(g.r_achieved) + " short of target " +
                                  std::to_string(target.r) + " after " +
                                  std::to_string(target.rewire_budget) + " proposals");
    }
    return g;
}

NeighborBeliefs empirical_beliefs(const GraphInstance& g) {
    if (g.edge_count == 0)
        throw std::invalid_argument("empirical_beliefs: the graph has no edges");

    int max_degree = *std::max_element(g.degrees.begin(), g.degrees.end());
    std::map<int, std::vector<double>> rows;
    std::map<int, long long> endpoint_counts;
    for (int u = 0; u < g.n; ++u) {
        int du = g.degrees[static_cast<std::size_t>(u)];
        if (du == 0) continue;
        auto& row = rows.try_emplace(du, std::vector<double>(
                                             static_cast<std::size_t>(max_degree) + 1, 0.0))
                        .first->second;
        for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
            row[static_cast<std::size_t>(g.degrees[static_cast<std::size_t>(v)])] += 1.0;
            ++endpoint_counts[du];
        }
    }
    for (auto& [d, row] : rows) {
        double total = static_cast<double>(endpoint_counts[d]);
        for (double& p : row) p /= total;
        // Normalize away accumulated rounding so the row is a strict pmf.
        double sum = 0.0;
        for (double p : row) sum += p;
        for (double& p : row) p /= sum;
    }
    return NeighborBeliefs::conditional(max_degree, std::move(rows));
}

ExPostReport expost_payoffs(const GraphInstance& g, const PayoffModel& model,
                            const StrategyProfile& profile, int trials, std::uint64_t seed,
                            int workers) {
    validate(model);
    if (trials < 1) throw std::invalid_argument("expost_payoffs: trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("expost_payoffs: workers must be >= 1");

    std::map<int, int> hist = g.degree_histogram();
    for (const auto& [d, count] : hist)
        if (!profile.has(d))
            throw std::invalid_argument("expost_payoffs: profile has no strategy for degree " +
                                        std::to_string(d) + " (" + std::to_string(count) +
                                        " nodes)");

    std::vector<int> classes;
    std::vector<int> counts;
    for (const auto& [d, count] : hist) {
        classes.push_back(d);
        counts.push_back(count);
    }
    std::map<int, std::size_t> class_index;
    for (std::size_t i = 0; i < classes.size(); ++i) class_index[classes[i]] = i;

    // Trial-major matrix of per-node payoffs: each cell is written exactly
    // once, so the result cannot depend on the worker count.
    std::vector<std::vector<double>> per_node(static_cast<std::size_t>(trials),
                                              std::vector<double>(static_cast<std::size_t>(g.n)));

    auto run_trial = [&](int t) {
        Rng rng(derive_seed(seed, "trial", static_cast<std::uint64_t>(t)));
        std::vector<double> actions(static_cast<std::size_t>(g.n));
        for (int u = 0; u < g.n; ++u) {
            const auto& law = profile.law(g.degrees[static_cast<std::size_t>(u)]);
            actions[static_cast<std::size_t>(u)] =
                profile.grid()[static_cast<int>(rng.sample_pmf(law))];
        }
        std::vector<double> neighbor_actions;
        for (int u = 0; u < g.n; ++u) {
            neighbor_actions.clear();
            for (int v : g.adjacency[static_cast<std::size_t>(u)])
                neighbor_actions.push_back(actions[static_cast<std::size_t>(v)]);
            per_node[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)] =
                utility(model, actions[static_cast<std::size_t>(u)], neighbor_actions);
        }
    };

    if (workers == 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        std::size_t active = static_cast<std::size_t>(std::min(workers, trials));
        for (std::size_t w = 0; w < active; ++w) {
            pool.emplace_back([&, w] {
                for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(active))
                    run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Per-node means in a fixed order, then class means over node means. The
    // standard error is the between-node dispersion: node means are the
    // independent draws from the degree class, and the trial average of a
    // fixed graph keeps a composition offset that trial-level noise cannot
    // see. A one-node class falls back to that node's trial-level error.
    std::vector<double> node_mean(static_cast<std::size_t>(g.n), 0.0);
    for (int u = 0; u < g.n; ++u) {
        double sum = 0.0;
        for (int t = 0; t < trials; ++t)
            sum += per_node[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)];
        node_mean[static_cast<std::size_t>(u)] = sum / trials;
    }

    ExPostReport report;
    report.degrees = classes;
    report.trials = trials;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double sum = 0.0, sumsq = 0.0;
        int lone_node = -1;
        for (int u = 0; u < g.n; ++u) {
            if (class_index.at(g.degrees[static_cast<std::size_t>(u)]) != c) continue;
            double v = node_mean[static_cast<std::size_t>(u)];
            sum += v;
            sumsq += v * v;
            lone_node = u;
        }
        double mean = sum / counts[c];
        double se = 0.0;
        if (counts[c] > 1) {
            double var = (sumsq - sum * sum / counts[c]) / (counts[c] - 1);
            se = std::sqrt(std::max(var, 0.0) / counts[c]);
        } else if (trials > 1) {
            double tsum = 0.0, tsumsq = 0.0;
            for (int t = 0; t < trials; ++t) {
                double v = per_node[static_cast<std::size_t>(t)][static_cast<std::size_t>(lone_node)];
                tsum += v;
                tsumsq += v * v;
            }
            double var = (tsumsq - tsum * tsum / trials) / (trials - 1);
            se = std::sqrt(std::max(var, 0.0) / trials);
        }
        report.mean_payoff.push_back(mean);
        report.std_error.push_back(se);
        report.node_counts.push_back(counts[c]);
    }
    return report;
}

void save_edge_list(const GraphInstance& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_edge_list: cannot open " + path + " for writing");
    char header[256];
    std::snprintf(header, sizeof(header),
                  "# n=%d edges=%lld seed=%" PRIu64
                  " r_target=%.15g r_achieved=%.15g degenerate=%d\n",
                  g.n, g.edge_count, g.seed, g.r_target, g.r_achieved, g.r_degenerate ? 1 : 0);
    out << header;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adjacency[static_cast<std::size_t>(u)])
            if (u < v) out << u << ' ' << v << '\n';
    if (!out) throw IoError("save_edge_list: write to " + path + " failed");
}

GraphInstance load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_edge_list: cannot open " + path);

    GraphInstance g;
    std::string line;
    std::vector<std::pair<int, int>> edges;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            unsigned long long seed_val = 0;
            long long edge_val = 0;
            int degen = 0;
            int got = std::sscanf(line.c_str(),
                                  "# n=%d edges=%lld seed=%llu r_target=%lf r_achieved=%lf "
                                  "degenerate=%d",
                                  &g.n, &edge_val, &seed_val, &g.r_target, &g.r_achieved, &degen);
            if (got == 6) {
                g.seed = seed_val;
                g.r_degenerate = degen != 0;
                have_header = true;
            }
            continue;
        }
        std::istringstream ss(line);
        int u = 0, v = 0;
        if (!(ss >> u >> v)) throw IoError("load_edge_list: malformed line '" + line + "'");
        edges.emplace_back(u, v);
    }
    if (!have_header) throw IoError("load_edge_list: missing header in " + path);
    for (const auto& [u, v] : edges)
        if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v)
            throw IoError("load_edge_list: edge endpoints out of range");
    rebuild_adjacency(g, edges);
    return g;
}

} // namespace secgame
