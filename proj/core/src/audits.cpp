#include "secgame/audits.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "secgame/rng.hpp"

namespace secgame {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::vector<std::pair<int, int>> consecutive_pairs(const std::vector<int>& degrees, int min_low) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < degrees.size(); ++i)
        if (degrees[i] >= min_low) pairs.emplace_back(degrees[i], degrees[i + 1]);
    return pairs;
}

bool direction_ok(Monotonicity m, bool expect_non_increasing) {
    if (m == Monotonicity::constant) return true;
    return expect_non_increasing ? m == Monotonicity::non_increasing
                                 : m == Monotonicity::non_decreasing;
}

// Appending an uninvested neighbor must not move the payoff at all.
bool zero_neighbor_identity_holds(const PayoffModel& model, const ActionGrid& grid,
                                  std::uint64_t seed) {
    Rng rng(derive_seed(seed, "zero-neighbor"));
    for (int trial = 0; trial < 40; ++trial) {
        int degree = rng.uniform_int(1, 4);
        std::vector<double> xs(static_cast<std::size_t>(degree));
        for (double& x : xs) x = grid[rng.uniform_int(0, grid.size() - 1)];
        double own = grid[rng.uniform_int(0, grid.size() - 1)];
        double before = utility(model, own, xs);
        xs.push_back(0.0);
        if (utility(model, own, xs) != before) return false;
    }
    return true;
}

} // namespace

AuditOutcome audit_degree_interaction_transfer(int case_count, std::uint64_t seed, double tol,
                                               int min_eligible) {
    Stopwatch clock;
    AuditOutcome outcome;
    outcome.name = "degree-interaction-transfer";

    int eligible = 0;
    int counterexamples = 0;
    int screened_out = 0;

    std::vector<AuditCase> cases = degree_interaction_suite(case_count, seed);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const AuditCase& c = cases[i];
        AuditRow row;
        row.subject = c.instance.name;

        // Hypothesis screen.
        bool identity = zero_neighbor_identity_holds(c.instance.model, c.instance.grid,
                                                     derive_seed(seed, "identity", i));
        InteractionReport interaction = classify_strategic_interaction(
            c.instance.model, 2, c.instance.grid.points(), 1e-12);
        bool interaction_ok =
            c.complements_side
                ? (interaction.kind == InteractionKind::complements ||
                   interaction.kind == InteractionKind::both)
                : (interaction.kind == InteractionKind::substitutes ||
                   interaction.kind == InteractionKind::both);

        auto functions = generate_monotone_test_functions(
            c.instance.beliefs.max_degree(), c.subset_size, 4, derive_seed(seed, "fns", i));
        AssociationTest assoc_test(
            c.subset_size, functions,
            consecutive_pairs(c.instance.degrees, std::max(1, c.subset_size)));
        AssociationReport assoc = check_association(c.instance.beliefs, assoc_test);
        bool assoc_ok = assoc.verdict == c.instance.intended_association;

        Monotonicity dir = classify_profile_monotonicity(c.profile);
        bool dir_ok = direction_ok(dir, !c.complements_side);

        if (!identity || !interaction_ok || !assoc_ok || !dir_ok) {
            ++screened_out;
            row.pass = true;
            row.detail = "screened out (hypotheses not all satisfied)";
            outcome.rows.push_back(std::move(row));
            continue;
        }
        ++eligible;

        DegreeInteractionReport transfer = check_degree_complementarity(
            c.instance.model, c.instance.beliefs, c.profile,
            consecutive_pairs(c.instance.degrees, 1), tol);
        bool verdict_ok =
            c.complements_side
                ? (transfer.verdict == DegreeInteractionVerdict::complements ||
                   transfer.verdict == DegreeInteractionVerdict::both)
                : (transfer.verdict == DegreeInteractionVerdict::substitutes ||
                   transfer.verdict == DegreeInteractionVerdict::both);
        row.pass = verdict_ok;
        row.detail = std::string(c.complements_side ? "complements side" : "substitutes side") +
                     ", transfer verdict " + to_string(transfer.verdict);
        if (!verdict_ok) ++counterexamples;
        outcome.rows.push_back(std::move(row));
    }

    outcome.pass = eligible >= min_eligible && counterexamples == 0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d cases: %d eligible (need >= %d), %d screened out, %d counterexamples",
                  case_count, eligible, min_eligible, screened_out, counterexamples);
    outcome.detail = buf;
    outcome.elapsed_seconds = clock.seconds();
    return outcome;
}

namespace {

std::vector<StrategyProfile> standard_starts(const Instance& inst) {
    std::vector<StrategyProfile> starts;
    StrategyProfile zero(inst.grid), one(inst.grid), half(inst.grid);
    for (int d : inst.degrees) {
        zero.set_pure(d, 0);
        one.set_pure(d, inst.grid.size() - 1);
        half.set_pure(d, inst.grid.size() / 2);
    }
    starts.push_back(std::move(zero));
    starts.push_back(std::move(one));
    starts.push_back(std::move(half));
    return starts;
}

} // namespace

AuditOutcome audit_equilibrium_existence_direction(double epsilon) {
    Stopwatch clock;
    AuditOutcome outcome;
    outcome.name = "equilibrium-existence-direction";
    outcome.pass = true;

    for (const Instance& inst : solver_suite()) {
        AuditRow row;
        row.subject = inst.name;
        row.pass = false;
        SolverConfig config = inst.solver;
        config.epsilon = epsilon;

        for (const StrategyProfile& start : standard_starts(inst)) {
            EquilibriumReport rep =
                solve_symmetric_bne(inst.model, inst.beliefs, inst.grid, config, start);
            if (!rep.converged || rep.residual > epsilon) continue;
            if (!direction_ok(rep.action_monotonicity, inst.expect_non_increasing_actions))
                continue;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "converged in %d iterations, residual %.3g, actions %s", rep.iterations,
                          rep.residual, to_string(rep.action_monotonicity).c_str());
            row.pass = true;
            row.detail = buf;
            break;
        }
        if (!row.pass) {
            row.detail = "no converged equilibrium with the expected direction from any start";
            outcome.pass = false;
        }
        outcome.rows.push_back(std::move(row));
    }

    outcome.detail = outcome.pass ? "every suite instance has a converged, correctly-oriented "
                                    "equilibrium"
                                  : "at least one suite instance failed";
    outcome.elapsed_seconds = clock.seconds();
    return outcome;
}

AuditOutcome audit_enumeration_monotonicity(double epsilon) {
    Stopwatch clock;
    AuditOutcome outcome;
    outcome.name = "enumeration-monotonicity";
    outcome.pass = true;

    struct BinaryCase {
        std::string name;
        std::vector<double> pmf;   // neighbor-degree law, index 0 unused
        double cost;
    };
    std::vector<BinaryCase> cases = {
        {"binary-regular-1", {0.0, 1.0}, 0.5},
        {"binary-skewed-3a", {0.0, 0.7, 0.2, 0.1}, 0.2},
        {"binary-skewed-3b", {0.0, 0.6, 0.3, 0.1}, 0.16},
        {"binary-uniform-2", {0.0, 0.5, 0.5}, 0.25},
        {"binary-skewed-2", {0.0, 0.8, 0.2}, 0.36},
    };

    int total_equilibria = 0;
    int non_monotone = 0;
    int falling = 0, rising = 0;
    SolverConfig config;
    config.mixing_levels = 11;
    config.epsilon = epsilon;

    for (const BinaryCase& bc : cases) {
        int max_degree = static_cast<int>(bc.pmf.size()) - 1;
        NeighborBeliefs beliefs = NeighborBeliefs::independent(max_degree, bc.pmf);
        PayoffModel model = PayoffModel::best_shot(bc.cost);
        std::vector<EquilibriumReport> found =
            enumerate_symmetric_equilibria(model, beliefs, ActionGrid::binary(), config);

        AuditRow row;
        row.subject = bc.name;
        row.pass = true;
        int local_bad = 0;
        for (const EquilibriumReport& rep : found) {
            ++total_equilibria;
            switch (rep.action_monotonicity) {
                case Monotonicity::non_monotone:
                    ++non_monotone;
                    ++local_bad;
                    break;
                case Monotonicity::non_increasing: ++falling; break;
                case Monotonicity::non_decreasing: ++rising; break;
                case Monotonicity::constant: break;
            }
        }
        char buf[120];
        std::snprintf(buf, sizeof(buf), "%zu equilibria, %d non-monotone", found.size(),
                      local_bad);
        row.detail = buf;
        row.pass = local_bad == 0;
        if (!row.pass) outcome.pass = false;
        outcome.rows.push_back(std::move(row));
    }

    const bool consistent = falling == 0 || rising == 0;
    if (total_equilibria == 0 || non_monotone > 0 || !consistent) outcome.pass = false;

    const char* direction = falling > 0 && rising == 0
                                ? "non-increasing"
                                : (rising > 0 && falling == 0 ? "non-decreasing" : "mixed");
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%d equilibria across %zu cases, %d non-monotone; non-constant direction: %s "
                  "(%d falling, %d rising)",
                  total_equilibria, cases.size(), non_monotone, direction, falling, rising);
    outcome.detail = buf;
    outcome.elapsed_seconds = clock.seconds();
    return outcome;
}

namespace {

AssociationVerdict suite_association_verdict(const Instance& inst, std::uint64_t seed) {
    auto functions =
        generate_monotone_test_functions(inst.beliefs.max_degree(), 1, 4, seed);
    AssociationTest test(1, functions, consecutive_pairs(inst.degrees, 1));
    return check_association(inst.beliefs, test).verdict;
}

// First converged equilibrium whose action direction fits the instance.
std::optional<EquilibriumReport> suite_equilibrium(const Instance& inst, double epsilon) {
    SolverConfig config = inst.solver;
    config.epsilon = epsilon;
    for (const StrategyProfile& start : standard_starts(inst)) {
        EquilibriumReport rep =
            solve_symmetric_bne(inst.model, inst.beliefs, inst.grid, config, start);
        if (rep.converged && rep.residual <= epsilon &&
            direction_ok(rep.action_monotonicity, inst.expect_non_increasing_actions))
            return rep;
    }
    return std::nullopt;
}

} // namespace

AuditOutcome audit_payoff_ordering(double tol) {
    Stopwatch clock;
    AuditOutcome outcome;
    outcome.name = "payoff-ordering";
    outcome.pass = true;

    int applicable = 0;
    for (const Instance& inst : solver_suite()) {
        AuditRow row;
        row.subject = inst.name;
        auto rep = suite_equilibrium(inst, 1e-9);
        if (!rep) {
            row.pass = false;
            row.detail = "no converged equilibrium to order";
            outcome.pass = false;
            outcome.rows.push_back(std::move(row));
            continue;
        }
        AssociationVerdict verdict = suite_association_verdict(inst, 977);
        PayoffOrderingReport ordering = verify_payoff_ordering(*rep, verdict, tol);
        if (!ordering.applicable) {
            row.pass = true;
            row.detail = "skipped: " + ordering.skip_reason;
        } else {
            ++applicable;
            row.pass = ordering.holds;
            row.detail = ordering.holds ? "expected utility non-decreasing in degree"
                                        : "ordering violated";
            if (!ordering.holds) outcome.pass = false;
        }
        outcome.rows.push_back(std::move(row));
    }

    if (applicable == 0) outcome.pass = false;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d applicable instances, pass=%d", applicable,
                  outcome.pass ? 1 : 0);
    outcome.detail = buf;
    outcome.elapsed_seconds = clock.seconds();
    return outcome;
}

AuditOutcome audit_effort_payoff_headline(double tol) {
    Stopwatch clock;
    AuditOutcome outcome;
    outcome.name = "effort-payoff-headline";
    outcome.pass = true;

    for (const Instance& inst : solver_suite()) {
        if (!inst.expect_non_increasing_actions) continue;   // substitutes instances only
        AuditRow row;
        row.subject = inst.name;
        auto rep = suite_equilibrium(inst, 1e-9);
        if (!rep) {
            row.pass = false;
            row.detail = "no converged equilibrium";
            outcome.pass = false;
            outcome.rows.push_back(std::move(row));
            continue;
        }
        Monotonicity eu_dir = classify_sequence_monotonicity(rep->expected_utility, tol);
        bool actions_ok = rep->action_monotonicity == Monotonicity::non_increasing ||
                          rep->action_monotonicity == Monotonicity::constant;
        bool eu_ok =
            eu_dir == Monotonicity::non_decreasing || eu_dir == Monotonicity::constant;
        row.pass = actions_ok && eu_ok;
        row.detail = "actions " + to_string(rep->action_monotonicity) + ", expected utility " +
                     to_string(eu_dir);
        if (!row.pass) outcome.pass = false;
        outcome.rows.push_back(std::move(row));
    }

    outcome.detail = outcome.pass
                         ? "actions fall and expected utility rises across all association "
                           "families"
                         : "headline ordering violated";
    outcome.elapsed_seconds = clock.seconds();
    return outcome;
}

std::vector<AuditOutcome> run_all_audits(std::uint64_t seed) {
    std::vector<AuditOutcome> out;
    out.push_back(audit_degree_interaction_transfer(60, seed));
    out.push_back(audit_equilibrium_existence_direction());
    out.push_back(audit_enumeration_monotonicity());
    out.push_back(audit_payoff_ordering());
    out.push_back(audit_effort_payoff_headline());
    return out;
}

} // namespace secgame
