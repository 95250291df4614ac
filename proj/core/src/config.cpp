#include "secgame/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "secgame/csv.hpp"
#include "secgame/errors.hpp"

namespace secgame {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double to_double(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        fail("[" + section + "] " + key + ": '" + v + "' is not a number");
    }
}

long long to_int(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long out = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        fail("[" + section + "] " + key + ": '" + v + "' is not an integer");
    }
}

std::uint64_t to_uint64(const std::string& section, const std::string& key,
                        const std::string& v) {
    try {
        std::size_t used = 0;
        unsigned long long out = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        fail("[" + section + "] " + key + ": '" + v + "' is not an unsigned integer");
    }
}

std::vector<double> to_double_list(const std::string& section, const std::string& key,
                                   const std::string& v) {
    std::istringstream ss(v);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(to_double(section, key, tok));
    if (out.empty()) fail("[" + section + "] " + key + ": empty list");
    return out;
}

std::vector<int> to_int_list(const std::string& section, const std::string& key,
                             const std::string& v) {
    std::istringstream ss(v);
    std::vector<int> out;
    std::string tok;
    while (ss >> tok) out.push_back(static_cast<int>(to_int(section, key, tok)));
    if (out.empty()) fail("[" + section + "] " + key + ": empty list");
    return out;
}

// Tracks which keys of a section were consumed, so leftovers can be reported.
class Section {
public:
    Section(const RawConfig& raw, std::string name) : name_(std::move(name)) {
        auto it = raw.find(name_);
        if (it != raw.end()) entries_ = &it->second;
    }

    bool present() const { return entries_ != nullptr; }

    std::optional<std::string> get(const std::string& key) {
        if (!entries_) return std::nullopt;
        auto it = entries_->find(key);
        if (it == entries_->end()) return std::nullopt;
        consumed_.insert(key);
        return it->second;
    }

    std::string require(const std::string& key) {
        auto v = get(key);
        if (!v) fail("[" + name_ + "] missing required key '" + key + "'");
        return *v;
    }

    std::vector<std::string> unconsumed() const {
        std::vector<std::string> out;
        if (!entries_) return out;
        for (const auto& [k, _] : *entries_)
            if (!consumed_.count(k)) out.push_back("[" + name_ + "] " + k);
        return out;
    }

    const std::string& name() const { return name_; }

private:
    std::string name_;
    const std::map<std::string, std::string>* entries_ = nullptr;
    std::set<std::string> consumed_;
};

PayoffModel parse_payoff(Section& sec) {
    std::string kind = sec.require("kind");
    try {
        if (kind == "best-shot") {
            double c0 = to_double(sec.name(), "cost_scale", sec.require("cost_scale"));
            return PayoffModel::best_shot(c0);
        }
        if (kind != "sum") fail("[payoff] kind: expected 'sum' or 'best-shot', got '" + kind + "'");

        std::string benefit_name = sec.require("benefit");
        BenefitFamily benefit;
        double alpha = 1.0;
        if (benefit_name == "linear-saturating") {
            benefit = BenefitFamily::linear_saturating;
        } else if (benefit_name == "power") {
            benefit = BenefitFamily::power;
            alpha = to_double(sec.name(), "alpha", sec.require("alpha"));
        } else if (benefit_name == "log2") {
            benefit = BenefitFamily::log2_shifted;
        } else {
            fail("[payoff] benefit: unknown family '" + benefit_name + "'");
        }

        double lambda = to_double(sec.name(), "lambda", sec.require("lambda"));
        std::string cost_name = sec.require("cost");
        CostFamily cost;
        if (cost_name == "linear")
            cost = CostFamily::linear;
        else if (cost_name == "quadratic")
            cost = CostFamily::quadratic;
        else
            fail("[payoff] cost: unknown family '" + cost_name + "'");
        double c0 = to_double(sec.name(), "cost_scale", sec.require("cost_scale"));
        return PayoffModel::sum(benefit, alpha, lambda, cost, c0);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("[payoff] ") + e.what());
    }
}

NeighborBeliefs parse_beliefs(Section& sec) {
    std::string kind = sec.require("kind");
    int max_degree = static_cast<int>(to_int(sec.name(), "max_degree", sec.require("max_degree")));
    try {
        if (kind == "independent") {
            std::vector<double> row = to_double_list(sec.name(), "row", sec.require("row"));
            return NeighborBeliefs::independent(max_degree, std::move(row));
        }
        if (kind == "regular") {
            std::vector<int> degrees =
                to_int_list(sec.name(), "degrees", sec.require("degrees"));
            return NeighborBeliefs::regular(degrees, max_degree);
        }
        if (kind == "conditional") {
            std::vector<int> degrees =
                to_int_list(sec.name(), "degrees", sec.require("degrees"));
            std::map<int, std::vector<double>> rows;
            for (int d : degrees) {
                std::string key = "row_" + std::to_string(d);
                rows[d] = to_double_list(sec.name(), key, sec.require(key));
            }
            return NeighborBeliefs::conditional(max_degree, std::move(rows));
        }
        fail("[beliefs] kind: expected 'independent', 'conditional', or 'regular', got '" + kind +
             "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("[beliefs] ") + e.what());
    }
}

void parse_solver(Section& sec, ExperimentConfig& cfg) {
    if (auto v = sec.get("damping")) cfg.solver.damping = to_double(sec.name(), "damping", *v);
    if (auto v = sec.get("max_iterations"))
        cfg.solver.max_iterations = static_cast<int>(to_int(sec.name(), "max_iterations", *v));
    if (auto v = sec.get("epsilon")) cfg.solver.epsilon = to_double(sec.name(), "epsilon", *v);
    if (auto v = sec.get("mixing_levels"))
        cfg.solver.mixing_levels = static_cast<int>(to_int(sec.name(), "mixing_levels", *v));
    if (auto v = sec.get("eu_budget"))
        cfg.solver.eu_budget.max_terms = to_int(sec.name(), "eu_budget", *v);
    if (auto v = sec.get("enumeration_budget"))
        cfg.solver.enumeration_budget = to_int(sec.name(), "enumeration_budget", *v);
    if (auto v = sec.get("tie_break")) {
        if (*v == "smallest")
            cfg.solver.tie_break = TieBreak::smallest_action;
        else if (*v == "largest")
            cfg.solver.tie_break = TieBreak::largest_action;
        else
            fail("[solver] tie_break: expected 'smallest' or 'largest', got '" + *v + "'");
    }
    if (auto v = sec.get("starts")) {
        std::istringstream ss(*v);
        std::string tok;
        cfg.starts.clear();
        while (ss >> tok) {
            if (tok == "zero")
                cfg.starts.push_back(StartKind::zero);
            else if (tok == "one")
                cfg.starts.push_back(StartKind::one);
            else if (tok == "half")
                cfg.starts.push_back(StartKind::half);
            else if (tok == "random")
                cfg.starts.push_back(StartKind::random_start);
            else
                fail("[solver] starts: unknown start '" + tok + "'");
        }
        if (cfg.starts.empty()) fail("[solver] starts: empty list");
    }
    if (auto v = sec.get("random_starts"))
        cfg.random_starts = static_cast<int>(to_int(sec.name(), "random_starts", *v));
    if (cfg.random_starts < 0) fail("[solver] random_starts: must be >= 0");
}

GraphSettings parse_graph(Section& sec) {
    int n = static_cast<int>(to_int(sec.name(), "n", sec.require("n")));
    std::vector<double> pmf = to_double_list(sec.name(), "degree_pmf", sec.require("degree_pmf"));
    double r_target = 0.0;
    double tolerance = 0.02;
    long long budget = 200'000;
    if (auto v = sec.get("r_target")) r_target = to_double(sec.name(), "r_target", *v);
    if (auto v = sec.get("tolerance")) tolerance = to_double(sec.name(), "tolerance", *v);
    if (auto v = sec.get("rewire_budget")) budget = to_int(sec.name(), "rewire_budget", *v);
    if (!pmf.empty() && pmf[0] != 0.0)
        fail("[graph] degree_pmf: degree-0 mass not allowed (isolated nodes play no game)");
    try {
        return GraphSettings{n, DegreeDistribution(std::move(pmf)), r_target, tolerance, budget};
    } catch (const std::exception& e) {
        fail(std::string("[graph] degree_pmf: ") + e.what());
    }
}

const std::set<std::string> kKnownKinds = {"solve", "enumerate", "association-audit",
                                           "lemma-suite", "expost-validate"};

} // namespace

namespace {
void validate_grid_against(const ExperimentConfig& cfg);
}

RawConfig parse_raw_config(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail("line " + std::to_string(line_no) + ": malformed section");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) fail("line " + std::to_string(line_no) + ": empty section name");
            if (raw.count(section))
                fail("line " + std::to_string(line_no) + ": duplicate section [" + section + "]");
            raw[section] = {};
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(line_no) + ": expected 'key = value', got '" + t + "'");
        if (section.empty())
            fail("line " + std::to_string(line_no) + ": key outside any section");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail("line " + std::to_string(line_no) + ": empty key");
        auto& entries = raw[section];
        if (entries.count(key))
            fail("line " + std::to_string(line_no) + ": duplicate key '" + key + "' in [" +
                 section + "]");
        entries[key] = value;
    }
    return raw;
}

std::string to_string(StartKind s) {
    switch (s) {
        case StartKind::zero: return "zero";
        case StartKind::one: return "one";
        case StartKind::half: return "half";
        case StartKind::random_start: return "random";
    }
    return "unknown";
}

ExperimentConfig parse_config(const std::string& text) {
    RawConfig raw = parse_raw_config(text);

    Section experiment(raw, "experiment");
    if (!experiment.present()) fail("missing required section [experiment]");

    ExperimentConfig cfg;
    cfg.kind = experiment.require("kind");
    if (!kKnownKinds.count(cfg.kind)) {
        std::string known;
        for (const auto& k : kKnownKinds) known += (known.empty() ? "" : ", ") + k;
        fail("[experiment] kind: unknown kind '" + cfg.kind + "' (known: " + known + ")");
    }
    cfg.name = experiment.get("name").value_or(cfg.kind);
    if (auto v = experiment.get("seed")) cfg.seed = to_uint64("experiment", "seed", *v);
    cfg.output_dir = experiment.get("output").value_or("");

    Section payoff(raw, "payoff");
    Section beliefs(raw, "beliefs");
    Section grid(raw, "grid");
    Section solver(raw, "solver");
    Section association(raw, "association");
    Section graph(raw, "graph");
    Section expost(raw, "expost");
    Section sweep(raw, "sweep");

    std::set<std::string> allowed = {"experiment"};
    std::set<std::string> required;
    if (cfg.kind == "solve" || cfg.kind == "enumerate") {
        allowed.insert({"payoff", "beliefs", "grid", "solver", "sweep"});
        required = {"payoff", "beliefs"};
    } else if (cfg.kind == "association-audit") {
        allowed.insert({"beliefs", "association"});
        required = {"beliefs"};
    } else if (cfg.kind == "lemma-suite") {
        // the reference suite is self-contained
    } else if (cfg.kind == "expost-validate") {
        allowed.insert({"payoff", "graph", "grid", "solver", "expost", "sweep"});
        required = {"payoff", "graph"};
    }

    std::vector<std::string> problems;
    for (const auto& [name, _] : raw)
        if (!allowed.count(name)) problems.push_back("[" + name + "] (section)");
    for (const std::string& name : required)
        if (!raw.count(name))
            fail("experiment kind '" + cfg.kind + "' requires section [" + name + "]");

    if (payoff.present() && allowed.count("payoff")) cfg.model = parse_payoff(payoff);
    if (beliefs.present() && allowed.count("beliefs")) cfg.beliefs = parse_beliefs(beliefs);
    if (grid.present() && allowed.count("grid")) {
        cfg.grid_resolution =
            static_cast<int>(to_int("grid", "resolution", grid.require("resolution")));
        if (cfg.grid_resolution < 2) fail("[grid] resolution: must be >= 2");
    } else if (cfg.model && cfg.model->kind == GameKind::best_shot) {
        cfg.grid_resolution = 2;
    }
    if (cfg.model && cfg.model->kind == GameKind::best_shot && cfg.grid_resolution != 2)
        fail("[grid] resolution: the binary game requires resolution 2");
    if (solver.present() && allowed.count("solver")) parse_solver(solver, cfg);
    if (association.present() && allowed.count("association")) {
        if (auto v = association.get("subset_size"))
            cfg.association_subset = static_cast<int>(to_int("association", "subset_size", *v));
        if (auto v = association.get("functions"))
            cfg.association_functions = static_cast<int>(to_int("association", "functions", *v));
        if (cfg.association_subset < 1) fail("[association] subset_size: must be >= 1");
        if (cfg.association_functions < 1) fail("[association] functions: must be >= 1");
    }
    if (graph.present() && allowed.count("graph")) cfg.graph = parse_graph(graph);
    if (expost.present() && allowed.count("expost")) {
        if (auto v = expost.get("trials"))
            cfg.expost_trials = static_cast<int>(to_int("expost", "trials", *v));
        if (cfg.expost_trials < 2) fail("[expost] trials: must be >= 2");
    }
    if (sweep.present() && allowed.count("sweep")) {
        cfg.sweep_parameter = sweep.require("parameter");
        const std::set<std::string> sweepable = {"lambda", "cost_scale", "r_target", "resolution"};
        if (!sweepable.count(cfg.sweep_parameter))
            fail("[sweep] parameter: '" + cfg.sweep_parameter +
                 "' is not sweepable (lambda, cost_scale, r_target, resolution)");
        cfg.sweep_values = to_double_list("sweep", "values", sweep.require("values"));
        if (cfg.sweep_parameter == "lambda" || cfg.sweep_parameter == "cost_scale") {
            if (!cfg.model) fail("[sweep] parameter '" + cfg.sweep_parameter +
                                 "' needs a [payoff] section");
        }
        if (cfg.sweep_parameter == "r_target" && !cfg.graph)
            fail("[sweep] parameter 'r_target' needs a [graph] section");
        if (cfg.sweep_parameter == "resolution")
            for (double v : cfg.sweep_values)
                if (v < 2.0 || v != static_cast<long long>(v))
                    fail("[sweep] values: resolutions must be integers >= 2");
    }

    // Anything not consumed is a typo; report all offenders at once.
    for (Section* sec :
         {&experiment, &payoff, &beliefs, &grid, &solver, &association, &graph, &expost, &sweep}) {
        if (!allowed.count(sec->name())) continue;
        for (const std::string& k : sec->unconsumed()) problems.push_back(k);
    }
    if (!problems.empty()) {
        std::string msg = "unknown configuration entries:";
        for (const std::string& p : problems) msg += "\n  " + p;
        fail(msg);
    }

    // Cross-checks the modules cannot see from their own inputs.
    if (cfg.kind == "solve" || cfg.kind == "enumerate") {
        if (cfg.model->kind == GameKind::best_shot && cfg.beliefs &&
            cfg.beliefs->neighbor_degree_support().empty())
            fail("[beliefs] rows carry no support");
    }
    try {
        validate_grid_against(cfg);
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config(read_text(path));
}

ActionGrid config_grid(const ExperimentConfig& cfg) {
    if (cfg.model && cfg.model->kind == GameKind::best_shot) return ActionGrid::binary();
    return ActionGrid::uniform(cfg.grid_resolution);
}

namespace {
void validate_grid_against(const ExperimentConfig& cfg) {
    (void)config_grid(cfg);   // constructor enforces grid invariants
}
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += csv_num(v[i]);
    }
    return out;
}

} // namespace

std::string ExperimentConfig::canonical_text() const {
    std::string out;
    out += "[experiment]\n";
    out += "kind = " + kind + "\n";
    out += "name = " + name + "\n";
    out += "seed = " + std::to_string(seed) + "\n";
    if (!output_dir.empty()) out += "output = " + output_dir + "\n";

    if (model) {
        out += "\n[payoff]\n";
        if (model->kind == GameKind::best_shot) {
            out += "kind = best-shot\n";
            out += "cost_scale = " + csv_num(model->cost_scale) + "\n";
        } else {
            out += "kind = sum\n";
            switch (model->benefit) {
                case BenefitFamily::linear_saturating: out += "benefit = linear-saturating\n"; break;
                case BenefitFamily::power:
                    out += "benefit = power\n";
                    out += "alpha = " + csv_num(model->alpha) + "\n";
                    break;
                case BenefitFamily::log2_shifted: out += "benefit = log2\n"; break;
                case BenefitFamily::step: out += "benefit = step\n"; break;
            }
            out += "lambda = " + csv_num(model->lambda) + "\n";
            out += std::string("cost = ") +
                   (model->cost == CostFamily::linear ? "linear" : "quadratic") + "\n";
            out += "cost_scale = " + csv_num(model->cost_scale) + "\n";
        }
    }

    if (beliefs) {
        out += "\n[beliefs]\n";
        switch (beliefs->kind()) {
            case BeliefKind::independent: {
                out += "kind = independent\n";
                out += "max_degree = " + std::to_string(beliefs->max_degree()) + "\n";
                out += "row = " + join_doubles(beliefs->row(beliefs->own_degrees().front())) +
                       "\n";
                break;
            }
            case BeliefKind::conditional_iid: {
                out += "kind = conditional\n";
                out += "max_degree = " + std::to_string(beliefs->max_degree()) + "\n";
                std::string degs;
                for (int d : beliefs->own_degrees())
                    degs += (degs.empty() ? "" : " ") + std::to_string(d);
                out += "degrees = " + degs + "\n";
                for (int d : beliefs->own_degrees())
                    out += "row_" + std::to_string(d) + " = " + join_doubles(beliefs->row(d)) +
                           "\n";
                break;
            }
            case BeliefKind::full_joint:
                out += "# full-joint beliefs are API-only and not serialized\n";
                break;
        }
    }

    // Grid and solver sections are meaningful (and re-parseable) only for
    // kinds that run the solver machinery.
    if (kind == "solve" || kind == "enumerate" || kind == "expost-validate") {
        out += "\n[grid]\nresolution = " + std::to_string(grid_resolution) + "\n";

        out += "\n[solver]\n";
        out += "damping = " + csv_num(solver.damping) + "\n";
        out += "max_iterations = " + std::to_string(solver.max_iterations) + "\n";
        out += "epsilon = " + csv_num(solver.epsilon) + "\n";
        out += std::string("tie_break = ") +
               (solver.tie_break == TieBreak::smallest_action ? "smallest" : "largest") + "\n";
        out += "mixing_levels = " + std::to_string(solver.mixing_levels) + "\n";
        out += "eu_budget = " + std::to_string(solver.eu_budget.max_terms) + "\n";
        out += "enumeration_budget = " + std::to_string(solver.enumeration_budget) + "\n";
        std::string start_names;
        for (StartKind s : starts) start_names += (start_names.empty() ? "" : " ") + to_string(s);
        out += "starts = " + start_names + "\n";
        out += "random_starts = " + std::to_string(random_starts) + "\n";
    }

    if (kind == "association-audit") {
        out += "\n[association]\n";
        out += "subset_size = " + std::to_string(association_subset) + "\n";
        out += "functions = " + std::to_string(association_functions) + "\n";
    }

    if (graph) {
        out += "\n[graph]\n";
        out += "n = " + std::to_string(graph->n) + "\n";
        out += "degree_pmf = " + join_doubles(graph->law.pmf()) + "\n";
        out += "r_target = " + csv_num(graph->r_target) + "\n";
        out += "tolerance = " + csv_num(graph->tolerance) + "\n";
        out += "rewire_budget = " + std::to_string(graph->rewire_budget) + "\n";
        out += "\n[expost]\ntrials = " + std::to_string(expost_trials) + "\n";
    }

    if (!sweep_parameter.empty()) {
        out += "\n[sweep]\n";
        out += "parameter = " + sweep_parameter + "\n";
        out += "values = " + join_doubles(sweep_values) + "\n";
    }
    return out;
}

} // namespace secgame
