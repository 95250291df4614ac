#include "secgame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "secgame/audits.hpp"
#include "secgame/csv.hpp"
#include "secgame/errors.hpp"
#include "secgame/rng.hpp"
#include "secgame/version.hpp"

namespace fs = std::filesystem;

namespace secgame {

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_manifest(const ExperimentConfig& cfg, const std::string& dir) {
    std::string text;
    text += "tool = secgame " + std::string(kVersion) + "\n";
    text += "timestamp = " + timestamp_utc() + "\n";
    text += "root_seed = " + std::to_string(cfg.seed) + "\n";
    text += "output_dir = " + dir + "\n";
    text += "\n# resolved configuration\n";
    text += cfg.canonical_text();
    write_text_atomic(dir + "/manifest.txt", text);
}

void note(const RunOverrides& overrides, const std::string& msg) {
    if (overrides.verbosity >= 1) std::cout << msg << "\n";
}

StrategyProfile make_start(const ExperimentConfig& cfg, const ActionGrid& grid, StartKind kind,
                           int random_index) {
    StrategyProfile profile(grid);
    Rng rng(derive_seed(cfg.seed, "start", static_cast<std::uint64_t>(random_index)));
    for (int d : cfg.beliefs->own_degrees()) {
        switch (kind) {
            case StartKind::zero: profile.set_pure(d, 0); break;
            case StartKind::one: profile.set_pure(d, grid.size() - 1); break;
            case StartKind::half: profile.set_pure(d, grid.size() / 2); break;
            case StartKind::random_start:
                profile.set_pure(d, rng.uniform_int(0, grid.size() - 1));
                break;
        }
    }
    return profile;
}

struct NamedStart {
    std::string label;
    StrategyProfile profile;
};

std::vector<NamedStart> expand_starts(const ExperimentConfig& cfg, const ActionGrid& grid) {
    std::vector<NamedStart> out;
    for (StartKind s : cfg.starts) {
        if (s == StartKind::random_start) {
            for (int k = 0; k < cfg.random_starts; ++k)
                out.push_back(
                    {"random-" + std::to_string(k), make_start(cfg, grid, s, k)});
        } else {
            out.push_back({to_string(s), make_start(cfg, grid, s, 0)});
        }
    }
    return out;
}

std::string run_solve(const ExperimentConfig& cfg, const std::string& dir) {
    const ActionGrid grid = config_grid(cfg);
    CsvWriter records(dir + "/records.csv",
                      {"start", "degree", "mean_action", "invest_probability",
                       "expected_utility", "converged", "iterations", "residual",
                       "action_monotonicity", "eu_monotonicity"});

    std::ostringstream summary;
    summary << "solve: " << cfg.name << "\n";
    bool wrote_table = false;
    for (const NamedStart& start : expand_starts(cfg, grid)) {
        EquilibriumReport rep =
            solve_symmetric_bne(*cfg.model, *cfg.beliefs, grid, cfg.solver, start.profile);
        for (std::size_t i = 0; i < rep.degrees.size(); ++i) {
            int d = rep.degrees[i];
            records.row({start.label, csv_int(d), csv_num(rep.profile.mean_action(d)),
                         csv_num(rep.profile.invest_probability(d)),
                         csv_num(rep.expected_utility[i]), rep.converged ? "1" : "0",
                         csv_int(rep.iterations), csv_num(rep.residual),
                         to_string(rep.action_monotonicity), to_string(rep.eu_monotonicity)});
        }
        summary << "  start " << start.label << ": "
                << (rep.converged ? "converged" : "did not converge") << " in "
                << rep.iterations << " iterations, residual " << csv_num(rep.residual)
                << ", actions " << to_string(rep.action_monotonicity) << ", expected utility "
                << to_string(rep.eu_monotonicity) << "\n";

        if (!wrote_table) {
            ExpectedUtilityTable table;
            for (int d : rep.degrees) {
                std::vector<double> row =
                    expected_utility_row(*cfg.model, *cfg.beliefs, rep.profile, d,
                                         cfg.solver.eu_budget);
                for (int a = 0; a < grid.size(); ++a)
                    table.rows.push_back(
                        {d, grid[a], row[static_cast<std::size_t>(a)], 0.0});
            }
            write_csv(table, dir + "/eu_table.csv");
            wrote_table = true;
        }
    }
    records.close();
    return summary.str();
}

std::string run_enumerate(const ExperimentConfig& cfg, const std::string& dir) {
    const ActionGrid grid = config_grid(cfg);
    std::vector<EquilibriumReport> found =
        enumerate_symmetric_equilibria(*cfg.model, *cfg.beliefs, grid, cfg.solver);

    CsvWriter records(dir + "/records.csv",
                      {"equilibrium", "degree", "mean_action", "invest_probability",
                       "expected_utility", "residual", "action_monotonicity",
                       "eu_monotonicity"});
    for (std::size_t e = 0; e < found.size(); ++e) {
        const EquilibriumReport& rep = found[e];
        for (std::size_t i = 0; i < rep.degrees.size(); ++i) {
            int d = rep.degrees[i];
            records.row({csv_int(static_cast<long long>(e)), csv_int(d),
                         csv_num(rep.profile.mean_action(d)),
                         csv_num(rep.profile.invest_probability(d)),
                         csv_num(rep.expected_utility[i]), csv_num(rep.residual),
                         to_string(rep.action_monotonicity), to_string(rep.eu_monotonicity)});
        }
    }
    records.close();

    std::ostringstream summary;
    summary << "enumerate: " << cfg.name << "\n  " << found.size()
            << " symmetric equilibria\n";
    for (std::size_t e = 0; e < found.size(); ++e)
        summary << "  equilibrium " << e << ": actions "
                << to_string(found[e].action_monotonicity) << ", expected utility "
                << to_string(found[e].eu_monotonicity) << "\n";
    return summary.str();
}

std::string run_association(const ExperimentConfig& cfg, const std::string& dir) {
    const NeighborBeliefs& beliefs = *cfg.beliefs;
    auto functions = generate_monotone_test_functions(
        beliefs.max_degree(), cfg.association_subset, cfg.association_functions,
        derive_seed(cfg.seed, "association-fns"));

    std::vector<int> degrees = beliefs.own_degrees();
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < degrees.size(); ++i)
        if (degrees[i] >= cfg.association_subset)
            pairs.emplace_back(degrees[i], degrees[i + 1]);
    if (pairs.empty())
        throw ConfigError("association-audit: no degree pairs with k >= subset_size");

    AssociationTest test(cfg.association_subset, std::move(functions), std::move(pairs));
    AssociationReport report = check_association(beliefs, test);

    CsvWriter records(dir + "/records.csv",
                      {"k", "k_prime", "f_index", "f_label", "e_k", "e_k_prime", "diff"});
    for (const AssociationRow& row : report.rows)
        records.row({csv_int(row.k), csv_int(row.k_prime), csv_int(row.f_index), row.f_label,
                     csv_num(row.e_k), csv_num(row.e_k_prime), csv_num(row.diff)});
    records.close();

    std::ostringstream summary;
    summary << "association-audit: " << cfg.name << "\n  verdict: "
            << to_string(report.verdict) << " over " << report.rows.size() << " comparisons\n";
    return summary.str();
}

std::string run_lemma_suite(const ExperimentConfig& cfg, const std::string& dir, bool* all_pass) {
    std::vector<AuditOutcome> outcomes = run_all_audits(cfg.seed);

    CsvWriter records(dir + "/records.csv", {"audit", "subject", "pass", "detail"});
    for (const AuditOutcome& audit : outcomes)
        for (const AuditRow& row : audit.rows)
            records.row({audit.name, row.subject, row.pass ? "1" : "0", row.detail});
    records.close();

    std::ostringstream summary;
    summary << "lemma-suite: " << cfg.name << "\n";
    *all_pass = true;
    for (const AuditOutcome& audit : outcomes) {
        summary << "  " << (audit.pass ? "PASS" : "FAIL") << " " << audit.name << ": "
                << audit.detail << "\n";
        if (!audit.pass) *all_pass = false;
    }
    summary << (*all_pass ? "  all checks passed\n" : "  some checks FAILED\n");
    return summary.str();
}

std::string run_expost(const ExperimentConfig& cfg, const std::string& dir, int workers) {
    const GraphSettings& graph_settings = *cfg.graph;
    AssortativityTarget target{graph_settings.law, graph_settings.r_target, graph_settings.tolerance, graph_settings.rewire_budget};
    GraphInstance graph = sample_graph(target, graph_settings.n, derive_seed(cfg.seed, "graph-sample"));
    save_edge_list(graph, dir + "/graph.edges");

    NeighborBeliefs beliefs = empirical_beliefs(graph);
    const ActionGrid grid = config_grid(cfg);

    // Equilibrium under the graph's own degree-mixing pattern; fall back to
    // the last report if no start converges (still reported data).
    ExperimentConfig solve_cfg = cfg;
    solve_cfg.beliefs = beliefs;
    std::optional<EquilibriumReport> chosen;
    for (const NamedStart& start : expand_starts(solve_cfg, grid)) {
        EquilibriumReport rep =
            solve_symmetric_bne(*cfg.model, beliefs, grid, cfg.solver, start.profile);
        bool better = !chosen || (rep.converged && !chosen->converged);
        if (better) chosen = std::move(rep);
        if (chosen->converged) break;
    }
    EquilibriumReport& rep = *chosen;

    ExPostReport expost = expost_payoffs(graph, *cfg.model, rep.profile, cfg.expost_trials,
                                         derive_seed(cfg.seed, "expost"), workers);

    CsvWriter records(dir + "/records.csv",
                      {"degree", "node_count", "expost_mean", "expost_se", "exact_value",
                       "abs_diff", "within_4se"});
    int within = 0;
    for (std::size_t c = 0; c < expost.degrees.size(); ++c) {
        int d = expost.degrees[c];
        const auto& law = rep.profile.law(d);
        std::vector<double> row =
            expected_utility_row(*cfg.model, beliefs, rep.profile, d, cfg.solver.eu_budget);
        double exact = 0.0;
        for (std::size_t a = 0; a < law.size(); ++a) exact += law[a] * row[a];

        double diff = std::fabs(expost.mean_payoff[c] - exact);
        bool ok = diff <= 4.0 * expost.std_error[c] + 1e-12;
        if (ok) ++within;
        records.row({csv_int(d), csv_int(expost.node_counts[c]),
                     csv_num(expost.mean_payoff[c]), csv_num(expost.std_error[c]),
                     csv_num(exact), csv_num(diff), ok ? "1" : "0"});
    }
    records.close();

    std::ostringstream summary;
    summary << "expost-validate: " << cfg.name << "\n  graph: n=" << graph.n
            << ", edges=" << graph.edge_count << ", r_achieved=" << csv_num(graph.r_achieved)
            << (graph.r_degenerate ? " (degenerate)" : "") << "\n  equilibrium: "
            << (rep.converged ? "converged" : "not converged") << ", residual "
            << csv_num(rep.residual) << "\n  agreement: " << within << "/"
            << expost.degrees.size() << " degree classes within 4 standard errors\n";
    return summary.str();
}

} // namespace

std::string resolve_output_dir(const ExperimentConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("SECGAME_OUTPUT_DIR"); env && *env)
        return std::string(env) + "/" + cfg.name;
    return "./" + cfg.name;
}

RunResult run_experiment(ExperimentConfig cfg, const RunOverrides& overrides) {
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;

    const std::string dir = resolve_output_dir(cfg);
    ensure_dir(dir);

    RunResult result;
    result.output_dir = dir;

    if (cfg.kind == "solve") {
        result.summary = run_solve(cfg, dir);
    } else if (cfg.kind == "enumerate") {
        result.summary = run_enumerate(cfg, dir);
    } else if (cfg.kind == "association-audit") {
        result.summary = run_association(cfg, dir);
    } else if (cfg.kind == "lemma-suite") {
        result.summary = run_lemma_suite(cfg, dir, &result.all_checks_passed);
    } else if (cfg.kind == "expost-validate") {
        result.summary = run_expost(cfg, dir, std::max(1, overrides.workers));
    } else {
        throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
    }

    write_text_atomic(dir + "/summary.txt", result.summary);
    write_manifest(cfg, dir);
    note(overrides, "wrote " + dir + "/records.csv");
    return result;
}

RunResult run_sweep(ExperimentConfig cfg, const RunOverrides& overrides) {
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    if (cfg.sweep_parameter.empty())
        throw ConfigError("sweep requested but the config has no [sweep] section");

    const std::string dir = resolve_output_dir(cfg);
    ensure_dir(dir);

    const std::string& param = cfg.sweep_parameter;
    const std::vector<double> values = cfg.sweep_values;

    // One fully resolved config per point, each with its own derived seed and
    // sub-directory, so points are independent and order-free.
    std::vector<ExperimentConfig> points;
    for (std::size_t i = 0; i < values.size(); ++i) {
        ExperimentConfig point = cfg;
        point.sweep_parameter.clear();
        point.sweep_values.clear();
        point.seed = derive_seed(cfg.seed, "sweep:" + param, i);
        point.name = cfg.name + "-" + param + "-" + csv_num(values[i]);
        point.output_dir = dir + "/" + param + "-" + csv_num(values[i]);

        double v = values[i];
        if (param == "lambda") {
            point.model->lambda = v;
            validate(*point.model);
        } else if (param == "cost_scale") {
            point.model->cost_scale = v;
            validate(*point.model);
        } else if (param == "r_target") {
            point.graph->r_target = v;
        } else if (param == "resolution") {
            point.grid_resolution = static_cast<int>(v);
            (void)config_grid(point);
        }
        points.push_back(std::move(point));
    }

    // Run points concurrently; capture the first failure and rethrow after
    // every worker has joined.
    std::vector<std::exception_ptr> errors(points.size());
    std::vector<RunResult> results(points.size());
    const std::size_t pool_size =
        std::min<std::size_t>(std::max(1, overrides.workers), points.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < pool_size; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < points.size(); i += pool_size) {
                try {
                    RunOverrides point_overrides;
                    point_overrides.workers = 1;
                    point_overrides.verbosity = 0;
                    results[i] = run_experiment(points[i], point_overrides);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    // Combined table: the swept value prefixed to every point record row.
    std::vector<std::vector<std::string>> first_rows =
        read_csv(results[0].output_dir + "/records.csv");
    std::vector<std::string> header = {param};
    header.insert(header.end(), first_rows[0].begin(), first_rows[0].end());
    CsvWriter combined(dir + "/combined.csv", header);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::vector<std::string>> rows =
            read_csv(results[i].output_dir + "/records.csv");
        for (std::size_t r = 1; r < rows.size(); ++r) {
            std::vector<std::string> cells = {csv_num(values[i])};
            cells.insert(cells.end(), rows[r].begin(), rows[r].end());
            combined.row(cells);
        }
    }
    combined.close();

    std::ostringstream summary;
    summary << "sweep " << param << " over " << values.size() << " values\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        summary << "  " << param << " = " << csv_num(values[i]) << ": "
                << results[i].output_dir << "\n";

    RunResult result;
    result.output_dir = dir;
    result.summary = summary.str();
    write_text_atomic(dir + "/summary.txt", result.summary);
    write_manifest(cfg, dir);
    note(overrides, "wrote " + dir + "/combined.csv");
    return result;
}

} // namespace secgame
