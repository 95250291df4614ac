#ifndef SECGAME_PAYOFF_HPP
#define SECGAME_PAYOFF_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace secgame {

/// Concave benefit families on aggregate protection z = x + lambda * sum(x_j).
enum class BenefitFamily {
    linear_saturating,   // min(z, 1)
    power,               // z^alpha, 0 < alpha <= 1
    log2_shifted,        // log2(1 + z)
    step                 // 1{z >= 1}; reserved for the binary protection game
};

enum class CostFamily {
    linear,      // c0 * x
    quadratic    // c0 * x^2
};

enum class GameKind {
    sum_of_investments,   // continuous actions in [0,1], aggregate benefit minus cost
    best_shot             // binary actions, step benefit, spillover weight fixed at 1
};

struct PayoffModel {
    GameKind kind = GameKind::sum_of_investments;
    BenefitFamily benefit = BenefitFamily::power;
    double alpha = 1.0;        // power exponent, used by BenefitFamily::power
    double lambda = 1.0;       // spillover weight on neighbor investment
    CostFamily cost = CostFamily::linear;
    double cost_scale = 0.0;   // c0 >= 0

    static PayoffModel sum(BenefitFamily benefit, double alpha, double lambda, CostFamily cost,
                           double cost_scale);
    static PayoffModel best_shot(double cost_scale);
};

/// Throws std::invalid_argument when parameters fall outside the family.
void validate(const PayoffModel& model);

double benefit_value(const PayoffModel& model, double z);
double cost_value(const PayoffModel& model, double x);

/// U(x, neighbors) for one player. Actions live in [0,1]; the binary game
/// additionally requires every action to be exactly 0 or 1.
double utility(const PayoffModel& model, double own_action,
               const std::vector<double>& neighbor_actions);

struct ExternalityWitness {
    double own_action = 0.0;
    std::vector<double> neighbor_actions;
    int raised_neighbor = 0;
    double raised_to = 0.0;
    double utility_before = 0.0;
    double utility_after = 0.0;
};

struct ExternalityReport {
    bool holds = true;
    bool exhaustive = false;
    long long cases_checked = 0;
    std::optional<ExternalityWitness> violation;
};

/// Does raising any single neighbor action ever lower the player's utility?
/// Exhaustive over the grid when degree <= 3 and the grid has <= 5 points,
/// seeded random search otherwise.
ExternalityReport check_positive_externality(const PayoffModel& model, int degree,
                                             const std::vector<double>& action_grid,
                                             std::uint64_t seed = 1, int samples = 2000);

enum class InteractionKind { complements, substitutes, both, neither };

std::string to_string(InteractionKind k);

struct InteractionWitness {
    double own_low = 0.0;
    double own_high = 0.0;
    std::vector<double> neighbors_low;
    std::vector<double> neighbors_high;
    double delta_at_low = 0.0;    // U(high, low-profile) - U(low, low-profile)
    double delta_at_high = 0.0;   // U(high, high-profile) - U(low, high-profile)
};

struct InteractionReport {
    InteractionKind kind = InteractionKind::neither;
    bool exhaustive = false;
    long long cases_checked = 0;
    /// Strictly increasing difference pair, when found.
    std::optional<InteractionWitness> increasing_witness;
    /// Strictly decreasing difference pair, when found.
    std::optional<InteractionWitness> decreasing_witness;
};

/// Classifies the game by differences U(x_hi, xs) - U(x_lo, xs) as the
/// neighbor profile xs rises coordinate-wise. All differences equal within
/// tol => both; never strictly falls => complements; never strictly rises =>
/// substitutes; otherwise neither. Exhaustive under the same size limits as
/// the externality check.
InteractionReport classify_strategic_interaction(const PayoffModel& model, int degree,
                                                 const std::vector<double>& action_grid,
                                                 double tol = 1e-12, std::uint64_t seed = 1,
                                                 int samples = 2000);

} // namespace secgame

#endif
