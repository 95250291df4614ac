#include "secgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secgame/errors.hpp"

namespace secgame {

namespace {

constexpr double kTieTol = 1e-12;

int pick_from_tied(const std::vector<int>& tied, TieBreak tie_break) {
    return tie_break == TieBreak::smallest_action ? tied.front() : tied.back();
}

std::vector<int> tied_indices(const std::vector<double>& row) {
    double best = *std::max_element(row.begin(), row.end());
    std::vector<int> tied;
    for (int i = 0; i < static_cast<int>(row.size()); ++i)
        if (row[static_cast<std::size_t>(i)] >= best - kTieTol) tied.push_back(i);
    return tied;
}

double profile_value(const std::vector<double>& law, const std::vector<double>& eu_row) {
    double v = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) v += law[i] * eu_row[i];
    return v;
}

void validate_solver_config(const SolverConfig& config) {
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
    if (config.max_iterations < 1)
        throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
    if (!(config.epsilon > 0.0))
        throw std::invalid_argument("SolverConfig: epsilon must be > 0");
    if (config.mixing_levels < 2)
        throw std::invalid_argument("SolverConfig: mixing_levels must be >= 2");
    if (config.enumeration_budget < 1)
        throw std::invalid_argument("SolverConfig: enumeration_budget must be >= 1");
}

} // namespace

BestResponse best_response_detail(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                  const StrategyProfile& profile, int degree, TieBreak tie_break,
                                  const EnumerationBudget& budget) {
    BestResponse br;
    br.eu_row = expected_utility_row(model, beliefs, profile, degree, budget);
    br.tied = tied_indices(br.eu_row);
    br.index = pick_from_tied(br.tied, tie_break);
    return br;
}

int best_response(const PayoffModel& model, const NeighborBeliefs& beliefs,
                  const StrategyProfile& profile, int degree, TieBreak tie_break,
                  const EnumerationBudget& budget) {
    return best_response_detail(model, beliefs, profile, degree, tie_break, budget).index;
}

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::best_response_iteration: return "best_response_iteration";
        case SolveMethod::exhaustive_enumeration: return "exhaustive_enumeration";
    }
    return "unknown";
}

namespace {

EquilibriumReport finish_report(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                StrategyProfile profile, const std::vector<int>& degrees,
                                SolveMethod method, bool converged, int iterations,
                                double residual, const EnumerationBudget& budget) {
    EquilibriumReport rep{std::move(profile), degrees, {}, Monotonicity::constant,
                          Monotonicity::constant, method, converged, iterations, residual};
    rep.expected_utility.reserve(degrees.size());
    for (int d : degrees) {
        auto row = expected_utility_row(model, beliefs, rep.profile, d, budget);
        rep.expected_utility.push_back(profile_value(rep.profile.law(d), row));
    }
    rep.action_monotonicity = classify_profile_monotonicity(rep.profile);
    rep.eu_monotonicity = classify_sequence_monotonicity(rep.expected_utility, 1e-9);
    return rep;
}

} // namespace

EquilibriumReport solve_symmetric_bne(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                      const ActionGrid& grid, const SolverConfig& config,
                                      const std::optional<StrategyProfile>& initial) {
    validate(model);
    validate_solver_config(config);
    const std::vector<int> degrees = beliefs.own_degrees();

    StrategyProfile profile = initial.value_or(StrategyProfile(grid));
    if (initial) {
        if (initial->grid().points() != grid.points())
            throw std::invalid_argument("solve_symmetric_bne: initial profile uses another grid");
        for (int d : degrees)
            if (!profile.has(d))
                throw std::invalid_argument("solve_symmetric_bne: initial profile missing degree " +
                                            std::to_string(d));
    } else {
        for (int d : degrees) profile.set_pure(d, 0);
    }

    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    for (int t = 0;; ++t) {
        // Best responses against the current profile, all degrees at once.
        std::vector<int> br(degrees.size());
        residual = 0.0;
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            BestResponse b = best_response_detail(model, beliefs, profile, degrees[i],
                                                  config.tie_break, config.eu_budget);
            br[i] = b.index;
            double gain = b.eu_row[static_cast<std::size_t>(b.index)] -
                          profile_value(profile.law(degrees[i]), b.eu_row);
            residual = std::max(residual, gain);
        }
        iterations = t;
        if (residual <= config.epsilon) {
            converged = true;
            break;
        }
        if (t >= config.max_iterations) break;

        for (std::size_t i = 0; i < degrees.size(); ++i) {
            std::vector<double> law = profile.law(degrees[i]);
            for (double& p : law) p *= 1.0 - config.damping;
            law[static_cast<std::size_t>(br[i])] += config.damping;
            profile.set_law(degrees[i], std::move(law));
        }
    }

    return finish_report(model, beliefs, std::move(profile), degrees,
                         SolveMethod::best_response_iteration, converged, iterations, residual,
                         config.eu_budget);
}

std::vector<EquilibriumReport> enumerate_symmetric_equilibria(const PayoffModel& model,
                                                              const NeighborBeliefs& beliefs,
                                                              const ActionGrid& grid,
                                                              const SolverConfig& config) {
    validate(model);
    validate_solver_config(config);
    const std::vector<int> degrees = beliefs.own_degrees();
    const int nd = static_cast<int>(degrees.size());
    std::vector<EquilibriumReport> found;

    if (model.kind == GameKind::best_shot) {
        if (grid.size() != 2)
            throw std::invalid_argument(
                "enumerate_symmetric_equilibria: binary game needs the two-point grid");
        if (nd > 4 || config.mixing_levels > 21)
            throw BudgetError("enumerate_symmetric_equilibria: binary enumeration supports at "
                              "most 4 distinct degrees and 21 mixing levels, got " +
                              std::to_string(nd) + " degrees and " +
                              std::to_string(config.mixing_levels) + " levels");

        std::vector<double> levels(static_cast<std::size_t>(config.mixing_levels));
        for (int i = 0; i < config.mixing_levels; ++i)
            levels[static_cast<std::size_t>(i)] =
                static_cast<double>(i) / (config.mixing_levels - 1);
        levels.back() = 1.0;

        std::vector<std::size_t> pos(static_cast<std::size_t>(nd), 0);
        while (true) {
            StrategyProfile candidate(grid);
            for (int i = 0; i < nd; ++i) {
                double q = levels[pos[static_cast<std::size_t>(i)]];
                candidate.set_law(degrees[static_cast<std::size_t>(i)], {1.0 - q, q});
            }
            DeviationGain dev = max_deviation_gain(model, beliefs, candidate, config.eu_budget);
            if (dev.gain <= config.epsilon)
                found.push_back(finish_report(model, beliefs, std::move(candidate), degrees,
                                              SolveMethod::exhaustive_enumeration, true, 0,
                                              dev.gain, config.eu_budget));

            int axis = nd - 1;
            while (axis >= 0 &&
                   pos[static_cast<std::size_t>(axis)] + 1 == levels.size()) {
                pos[static_cast<std::size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
            ++pos[static_cast<std::size_t>(axis)];
        }
        return found;
    }

    // Continuous game: pure symmetric profiles on the action grid.
    long long candidates = 1;
    for (int i = 0; i < nd; ++i) {
        if (candidates > config.enumeration_budget / grid.size()) {
            throw BudgetError("enumerate_symmetric_equilibria: " + std::to_string(grid.size()) +
                              "^" + std::to_string(nd) +
                              " pure candidates exceed the enumeration budget of " +
                              std::to_string(config.enumeration_budget));
        }
        candidates *= grid.size();
    }

    std::vector<int> idx(static_cast<std::size_t>(nd), 0);
    while (true) {
        StrategyProfile candidate(grid);
        for (int i = 0; i < nd; ++i)
            candidate.set_pure(degrees[static_cast<std::size_t>(i)],
                               idx[static_cast<std::size_t>(i)]);
        DeviationGain dev = max_deviation_gain(model, beliefs, candidate, config.eu_budget);
        if (dev.gain <= config.epsilon)
            found.push_back(finish_report(model, beliefs, std::move(candidate), degrees,
                                          SolveMethod::exhaustive_enumeration, true, 0, dev.gain,
                                          config.eu_budget));

        int axis = nd - 1;
        while (axis >= 0 && idx[static_cast<std::size_t>(axis)] + 1 == grid.size()) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++idx[static_cast<std::size_t>(axis)];
    }
    return found;
}

DeviationGain max_deviation_gain(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                 const StrategyProfile& profile, const EnumerationBudget& budget) {
    DeviationGain out;
    bool first = true;
    for (int d : beliefs.own_degrees()) {
        std::vector<double> row = expected_utility_row(model, beliefs, profile, d, budget);
        double current = profile_value(profile.law(d), row);
        int best = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
        double gain = row[static_cast<std::size_t>(best)] - current;
        if (first || gain > out.gain) {
            out = {gain, d, best};
            first = false;
        }
    }
    return out;
}

PayoffOrderingReport verify_payoff_ordering(const EquilibriumReport& report,
                                            AssociationVerdict association, double tol) {
    PayoffOrderingReport out;

    const Monotonicity actions = report.action_monotonicity;
    const bool actions_up =
        actions == Monotonicity::non_decreasing || actions == Monotonicity::constant;
    const bool actions_down =
        actions == Monotonicity::non_increasing || actions == Monotonicity::constant;

    if (association == AssociationVerdict::satisfies_positive && actions_up) {
        out.applicable = true;
    } else if (association == AssociationVerdict::satisfies_negative && actions_down) {
        out.applicable = true;
    } else {
        out.skip_reason = "hypothesis mismatch: beliefs classified '" + to_string(association) +
                          "' but the action profile is " + to_string(actions);
        return out;
    }

    out.holds = true;
    for (std::size_t i = 0; i + 1 < report.degrees.size(); ++i) {
        double lo = report.expected_utility[i];
        double hi = report.expected_utility[i + 1];
        if (hi < lo - tol) {
            out.holds = false;
            out.failures.push_back(
                {report.degrees[i], report.degrees[i + 1], lo, hi});
        }
    }
    return out;
}

} // namespace secgame
