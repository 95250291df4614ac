#ifndef SECGAME_DEGREE_MODEL_HPP
#define SECGAME_DEGREE_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace secgame {

/// Probability mass over node degrees 0..max_degree (population law).
class DegreeDistribution {
public:
    /// pmf[d] is the probability of degree d; size fixes max_degree = size-1.
    /// Entries must be non-negative and sum to 1 within 1e-12; max_degree >= 1.
    explicit DegreeDistribution(std::vector<double> pmf);

    int max_degree() const { return static_cast<int>(pmf_.size()) - 1; }
    double p(int degree) const { return pmf_.at(static_cast<std::size_t>(degree)); }
    const std::vector<double>& pmf() const { return pmf_; }
    double mean() const;

private:
    std::vector<double> pmf_;
};

enum class BeliefKind { independent, conditional_iid, full_joint };

/// Explicit joint law over a degree-d neighbor-degree vector, used for small
/// exactness checks. Keys are full tuples (one entry per neighbor, each >= 1);
/// the table must be exchangeable: every permutation of a stored tuple is
/// stored with the same probability.
using JointTable = std::map<std::vector<int>, double>;

/// Degree-conditional beliefs about neighbor degrees, one model per own
/// degree. Neighbor degrees are always >= 1: an observed neighbor has at
/// least the edge shared with the believer.
class NeighborBeliefs {
public:
    /// Same neighbor-degree law regardless of own degree. `neighbor_pmf` is
    /// indexed 0..max_degree with entry 0 forced to zero.
    static NeighborBeliefs independent(int max_degree, std::vector<double> neighbor_pmf);

    /// Neighbor degrees are i.i.d. draws from a row chosen by own degree.
    /// `rows[d]` is the conditional law for own degree d, indexed like above.
    static NeighborBeliefs conditional(int max_degree, std::map<int, std::vector<double>> rows);

    /// Every neighbor of a degree-d node has degree d with certainty.
    static NeighborBeliefs regular(const std::vector<int>& degrees, int max_degree);

    /// Explicit exchangeable joint per own degree; exact but exponential, so
    /// own degrees are capped (default cap 4).
    static NeighborBeliefs full_joint(int max_degree, std::map<int, JointTable> joints,
                                      int joint_degree_cap = 4);

    BeliefKind kind() const { return kind_; }
    int max_degree() const { return max_degree_; }

    /// Own degrees for which a belief is defined.
    std::vector<int> own_degrees() const;
    bool defined_for(int own_degree) const;

    /// Conditional row for own degree d (independent/conditional_iid only).
    const std::vector<double>& row(int own_degree) const;
    /// Neighbor degrees with positive mass in row(own_degree).
    std::vector<int> row_support(int own_degree) const;

    const JointTable& joint(int own_degree) const;

    /// All neighbor degrees that can occur under any own degree.
    std::vector<int> neighbor_degree_support() const;

private:
    NeighborBeliefs() = default;

    BeliefKind kind_ = BeliefKind::independent;
    int max_degree_ = 0;
    std::map<int, std::vector<double>> rows_;    // independent stores one shared row per degree
    std::map<int, JointTable> joints_;
};

/// Tabulated F: {1..domain_max}^arity -> R. Association checks quantify over
/// coordinate-wise non-decreasing F; the constructor does not enforce that
/// (generators do), `is_monotone` scans every unit-increment pair.
class MonotoneTable {
public:
    MonotoneTable(int domain_max, int arity, std::vector<double> values, std::string label = "");

    static MonotoneTable identity_sum(int domain_max, int arity);
    static MonotoneTable coordinate_max(int domain_max, int arity);

    int domain_max() const { return domain_max_; }
    int arity() const { return arity_; }
    const std::string& label() const { return label_; }

    /// Evaluate at a tuple of degrees, each in 1..domain_max.
    double operator()(const std::vector<int>& tuple) const;

    bool is_monotone() const;

private:
    std::size_t index_of(const std::vector<int>& tuple) const;

    int domain_max_ = 0;
    int arity_ = 0;
    std::vector<double> values_;
    std::string label_;
};

/// Seeded family of non-decreasing test functions. Tables are built as
/// cumulative sums of non-negative increments along each axis, so they are
/// monotone by construction. The first two slots are the canonical
/// identity-sum and coordinate-max functions (truncated when how_many < 2);
/// the remainder are randomized. Deterministic in (domain_max, arity,
/// how_many, seed).
std::vector<MonotoneTable> generate_monotone_test_functions(int domain_max, int arity,
                                                            int how_many, std::uint64_t seed);

/// Expectation of F applied to the degrees of the first `subset_size`
/// neighbors of a degree-`own_degree` node; exchangeability makes the choice
/// of subset irrelevant. Throws std::domain_error when subset_size >
/// own_degree and std::invalid_argument when F cannot cover the reachable
/// degree tuples.
double subset_expectation(const NeighborBeliefs& beliefs, int own_degree,
                          const MonotoneTable& f, int subset_size);

enum class AssociationVerdict { satisfies_positive, satisfies_negative, neither };

std::string to_string(AssociationVerdict v);

/// The inputs of an association check: one subset size, a family of monotone
/// test functions of that arity, and the ordered degree pairs to compare.
struct AssociationTest {
    /// Throws if any table fails the monotonicity scan, any pair is not
    /// strictly ordered, or subset_size exceeds the smallest compared degree.
    AssociationTest(int subset_size, std::vector<MonotoneTable> functions,
                    std::vector<std::pair<int, int>> degree_pairs);

    int subset_size;
    std::vector<MonotoneTable> functions;
    std::vector<std::pair<int, int>> degree_pairs;   // (k, k') with k' > k
};

struct AssociationRow {
    int k = 0;
    int k_prime = 0;
    int f_index = 0;
    std::string f_label;
    double e_k = 0.0;
    double e_k_prime = 0.0;
    double diff = 0.0;   // e_k_prime - e_k
};

struct AssociationReport {
    AssociationVerdict verdict = AssociationVerdict::neither;
    std::vector<AssociationRow> rows;
    /// Row breaking the weak >= ordering (diff < -tol), when one exists.
    std::optional<AssociationRow> positive_violation;
    /// Row breaking the strict < ordering (diff >= -tol), when one exists.
    std::optional<AssociationRow> negative_violation;
};

/// Compares E[F | k'] against E[F | k] for every pair and function.
/// satisfies_positive: all differences >= -tol (the weak ordering);
/// satisfies_negative: all differences < -tol (the strict ordering);
/// neither otherwise. Independence therefore classifies as positive.
AssociationReport check_association(const NeighborBeliefs& beliefs, const AssociationTest& test,
                                    double tol = 1e-12);

} // namespace secgame

#endif
