#ifndef SECGAME_EXPECTED_UTILITY_HPP
#define SECGAME_EXPECTED_UTILITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secgame/degree_model.hpp"
#include "secgame/payoff.hpp"

namespace secgame {

/// Finite action set shared by every strategy in a profile. Points are
/// strictly increasing with first point 0 and last point 1.
class ActionGrid {
public:
    explicit ActionGrid(std::vector<double> points);

    /// `resolution` evenly spaced points covering [0,1]; resolution >= 2.
    static ActionGrid uniform(int resolution);
    static ActionGrid binary() { return uniform(2); }

    int size() const { return static_cast<int>(points_.size()); }
    double operator[](int i) const { return points_.at(static_cast<std::size_t>(i)); }
    const std::vector<double>& points() const { return points_; }

    /// Index of the grid point equal to `x` within 1e-12; throws when absent.
    int index_of(double x) const;

private:
    std::vector<double> points_;
};

/// Symmetric strategy profile: one mixed action per own degree, expressed as
/// a law over the shared grid.
class StrategyProfile {
public:
    explicit StrategyProfile(ActionGrid grid);

    const ActionGrid& grid() const { return grid_; }

    void set_pure(int degree, int grid_index);
    void set_law(int degree, std::vector<double> law);

    bool has(int degree) const { return laws_.count(degree) > 0; }
    const std::vector<double>& law(int degree) const;
    std::vector<int> degrees() const;

    /// Grid indices carrying positive mass for `degree`.
    std::vector<int> support(int degree) const;

    double mean_action(int degree) const;
    /// Mass on strictly positive actions.
    double invest_probability(int degree) const;
    /// True when the law is a point mass; reports the index through `index`.
    bool is_pure(int degree, int* index = nullptr) const;

private:
    ActionGrid grid_;
    std::map<int, std::vector<double>> laws_;
};

enum class Monotonicity { constant, non_decreasing, non_increasing, non_monotone };

std::string to_string(Monotonicity m);

/// First-order stochastic dominance comparison of two laws on the same grid:
/// returns +1 when `b` dominates `a`, -1 when `a` dominates `b`, 0 when the
/// laws coincide within tol, and nullopt when the CDFs cross.
std::optional<int> fosd_direction(const std::vector<double>& a, const std::vector<double>& b,
                                  double tol = 1e-12);

/// Classifies degree -> mixed action using stochastic dominance between
/// consecutive degrees in the profile.
Monotonicity classify_profile_monotonicity(const StrategyProfile& profile, double tol = 1e-12);

Monotonicity classify_sequence_monotonicity(const std::vector<double>& values, double tol);

struct EnumerationBudget {
    long long max_terms = 2'000'000;
};

/// Interim expected utility of playing `own_action` at degree `degree` while
/// everyone else follows `profile`: the full sum over neighbor degree tuples
/// and neighbor action tuples, term by term. Throws BudgetError when the
/// support-aware term count exceeds the budget.
double expected_utility_exact(const PayoffModel& model, const NeighborBeliefs& beliefs,
                              const StrategyProfile& profile, int degree, double own_action,
                              const EnumerationBudget& budget = {});

/// expected_utility_exact for every grid action in one lattice pass.
std::vector<double> expected_utility_row(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                         const StrategyProfile& profile, int degree,
                                         const EnumerationBudget& budget = {});

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Monte Carlo counterpart of expected_utility_exact; samples >= 100.
/// Deterministic in the seed.
McEstimate expected_utility_mc(const PayoffModel& model, const NeighborBeliefs& beliefs,
                               const StrategyProfile& profile, int degree, double own_action,
                               int samples, std::uint64_t seed);

struct EuRow {
    int degree = 0;
    double action = 0.0;
    double value = 0.0;
    double std_error = 0.0;   // zero for exact rows
};

struct ExpectedUtilityTable {
    std::vector<EuRow> rows;
};

/// Columns: degree,action,value,std_error.
void write_csv(const ExpectedUtilityTable& table, const std::string& path);

enum class DegreeInteractionVerdict { complements, substitutes, both, neither };

std::string to_string(DegreeInteractionVerdict v);

struct DegreeInteractionWitness {
    int d_lo = 0;
    int d_hi = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double delta_lo = 0.0;   // EU(d_lo, x_hi) - EU(d_lo, x_lo)
    double delta_hi = 0.0;   // EU(d_hi, x_hi) - EU(d_hi, x_lo)
};

struct DegreeInteractionReport {
    DegreeInteractionVerdict verdict = DegreeInteractionVerdict::neither;
    Monotonicity profile_monotonicity = Monotonicity::constant;
    bool tested_increasing = false;   // differences non-decreasing in degree
    bool tested_decreasing = false;   // differences non-increasing in degree
    bool increasing_holds = false;
    bool decreasing_holds = false;
    long long comparisons = 0;
    std::optional<DegreeInteractionWitness> increasing_violation;
    std::optional<DegreeInteractionWitness> decreasing_violation;
};

/// Tests whether expected-utility differences across own actions widen or
/// narrow with degree, for each ordered degree pair and every ordered action
/// pair on the grid. The profile must be monotone: a non-decreasing profile
/// licenses only the widening test, a non-increasing profile only the
/// narrowing test, a constant profile both. Throws std::domain_error on a
/// non-monotone profile.
DegreeInteractionReport check_degree_complementarity(
    const PayoffModel& model, const NeighborBeliefs& beliefs, const StrategyProfile& profile,
    const std::vector<std::pair<int, int>>& degree_pairs, double tol = 1e-10,
    const EnumerationBudget& budget = {});

} // namespace secgame

#endif
