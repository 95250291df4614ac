#ifndef SECGAME_EQUILIBRIUM_HPP
#define SECGAME_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "secgame/degree_model.hpp"
#include "secgame/expected_utility.hpp"
#include "secgame/payoff.hpp"

namespace secgame {

enum class TieBreak { smallest_action, largest_action };

struct SolverConfig {
    double damping = 0.5;            // step weight toward the best response
    int max_iterations = 500;
    TieBreak tie_break = TieBreak::smallest_action;
    double epsilon = 1e-9;           // residual threshold for convergence
    int mixing_levels = 11;          // invest-probability grid for binary enumeration
    EnumerationBudget eu_budget;
    long long enumeration_budget = 2'000'000;   // max candidate profiles
};

struct BestResponse {
    int index = 0;                  // grid index of the chosen action
    std::vector<double> eu_row;     // expected utility at every grid action
    std::vector<int> tied;          // all indices within tie tolerance of the max
};

/// Argmax of interim expected utility over the grid; ties within 1e-12 go to
/// the smallest or largest tied action per `tie_break`.
BestResponse best_response_detail(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                  const StrategyProfile& profile, int degree, TieBreak tie_break,
                                  const EnumerationBudget& budget = {});

int best_response(const PayoffModel& model, const NeighborBeliefs& beliefs,
                  const StrategyProfile& profile, int degree,
                  TieBreak tie_break = TieBreak::smallest_action,
                  const EnumerationBudget& budget = {});

enum class SolveMethod { best_response_iteration, exhaustive_enumeration };

std::string to_string(SolveMethod m);

struct EquilibriumReport {
    StrategyProfile profile;
    std::vector<int> degrees;
    std::vector<double> expected_utility;      // aligned with `degrees`
    Monotonicity action_monotonicity = Monotonicity::constant;
    Monotonicity eu_monotonicity = Monotonicity::constant;
    SolveMethod method = SolveMethod::best_response_iteration;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;   // largest best-response improvement over the profile
};

/// Damped best-response iteration on the symmetric profile. The residual is
/// evaluated before each step, so a profile seeded at a fixed point reports
/// convergence without moving. Non-convergence is reported, not thrown.
EquilibriumReport solve_symmetric_bne(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                      const ActionGrid& grid, const SolverConfig& config = {},
                                      const std::optional<StrategyProfile>& initial = std::nullopt);

/// Exhaustive scan over symmetric candidate profiles, in lexicographic order.
/// Binary games scan invest probabilities on a `mixing_levels` grid (at most
/// 4 distinct degrees and 21 levels); continuous games scan pure profiles on
/// the action grid. Candidate counts beyond `enumeration_budget` throw
/// BudgetError naming the offending dimensions.
std::vector<EquilibriumReport> enumerate_symmetric_equilibria(const PayoffModel& model,
                                                              const NeighborBeliefs& beliefs,
                                                              const ActionGrid& grid,
                                                              const SolverConfig& config = {});

struct DeviationGain {
    double gain = 0.0;     // best single-degree improvement over the profile
    int degree = 0;
    int action_index = 0;
};

/// Independent check that no degree can profit by deviating from `profile`.
DeviationGain max_deviation_gain(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                 const StrategyProfile& profile,
                                 const EnumerationBudget& budget = {});

struct PayoffOrderingFailure {
    int d_lo = 0;
    int d_hi = 0;
    double eu_lo = 0.0;
    double eu_hi = 0.0;
};

struct PayoffOrderingReport {
    bool applicable = false;
    std::string skip_reason;
    bool holds = false;
    std::vector<PayoffOrderingFailure> failures;
};

/// Checks that equilibrium expected utility is non-decreasing in degree, but
/// only when the matching hypothesis holds: beliefs classified as positively
/// associated pair with a non-decreasing (or constant) action profile, and
/// negatively associated beliefs with a non-increasing (or constant) one.
/// Hypothesis mismatches are reported as skips, not errors.
PayoffOrderingReport verify_payoff_ordering(const EquilibriumReport& report,
                                            AssociationVerdict association, double tol = 1e-9);

} // namespace secgame

#endif
