#include "secgame/expected_utility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secgame/csv.hpp"
#include "secgame/errors.hpp"
#include "secgame/rng.hpp"

namespace secgame {

ActionGrid::ActionGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("ActionGrid: need at least two points");
    if (points_.front() != 0.0 || points_.back() != 1.0)
        throw std::invalid_argument("ActionGrid: grid must start at 0 and end at 1");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw std::invalid_argument("ActionGrid: points must be strictly increasing");
}

ActionGrid ActionGrid::uniform(int resolution) {
    if (resolution < 2) throw std::invalid_argument("ActionGrid: resolution must be >= 2");
    std::vector<double> pts(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i)
        pts[static_cast<std::size_t>(i)] = static_cast<double>(i) / (resolution - 1);
    pts.back() = 1.0;
    return ActionGrid(std::move(pts));
}

int ActionGrid::index_of(double x) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (std::fabs(points_[i] - x) <= 1e-12) return static_cast<int>(i);
    throw std::invalid_argument("ActionGrid: no grid point equals " + std::to_string(x));
}

StrategyProfile::StrategyProfile(ActionGrid grid) : grid_(std::move(grid)) {}

void StrategyProfile::set_pure(int degree, int grid_index) {
    if (degree < 1) throw std::invalid_argument("StrategyProfile: degree must be >= 1");
    if (grid_index < 0 || grid_index >= grid_.size())
        throw std::invalid_argument("StrategyProfile: grid index out of range");
    std::vector<double> law(static_cast<std::size_t>(grid_.size()), 0.0);
    law[static_cast<std::size_t>(grid_index)] = 1.0;
    laws_[degree] = std::move(law);
}

void StrategyProfile::set_law(int degree, std::vector<double> law) {
    if (degree < 1) throw std::invalid_argument("StrategyProfile: degree must be >= 1");
    if (static_cast<int>(law.size()) != grid_.size())
        throw std::invalid_argument("StrategyProfile: law size does not match grid");
    double sum = 0.0;
    for (double p : law) {
        if (p < 0.0) throw std::invalid_argument("StrategyProfile: negative mass");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("StrategyProfile: law does not sum to 1");
    laws_[degree] = std::move(law);
}

const std::vector<double>& StrategyProfile::law(int degree) const {
    auto it = laws_.find(degree);
    if (it == laws_.end())
        throw std::invalid_argument("StrategyProfile: no strategy for degree " +
                                    std::to_string(degree));
    return it->second;
}

std::vector<int> StrategyProfile::degrees() const {
    std::vector<int> out;
    for (const auto& [d, _] : laws_) out.push_back(d);
    return out;
}

std::vector<int> StrategyProfile::support(int degree) const {
    const auto& l = law(degree);
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(l.size()); ++i)
        if (l[static_cast<std::size_t>(i)] > 0.0) s.push_back(i);
    return s;
}

double StrategyProfile::mean_action(int degree) const {
    const auto& l = law(degree);
    double m = 0.0;
    for (int i = 0; i < static_cast<int>(l.size()); ++i)
        m += l[static_cast<std::size_t>(i)] * grid_[i];
    return m;
}

double StrategyProfile::invest_probability(int degree) const {
    const auto& l = law(degree);
    double m = 0.0;
    for (int i = 0; i < static_cast<int>(l.size()); ++i)
        if (grid_[i] > 0.0) m += l[static_cast<std::size_t>(i)];
    return m;
}

bool StrategyProfile::is_pure(int degree, int* index) const {
    const auto& l = law(degree);
    for (int i = 0; i < static_cast<int>(l.size()); ++i) {
        if (l[static_cast<std::size_t>(i)] == 1.0) {
            if (index) *index = i;
            return true;
        }
    }
    return false;
}

std::string to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::constant: return "constant";
        case Monotonicity::non_decreasing: return "non_decreasing";
        case Monotonicity::non_increasing: return "non_increasing";
        case Monotonicity::non_monotone: return "non_monotone";
    }
    return "unknown";
}

std::optional<int> fosd_direction(const std::vector<double>& a, const std::vector<double>& b,
                                  double tol) {
    if (a.size() != b.size()) throw std::invalid_argument("fosd_direction: size mismatch");
    bool b_dominates = true;   // CDF_b <= CDF_a everywhere
    bool a_dominates = true;
    double ca = 0.0, cb = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {   // final CDF point is 1 for both
        ca += a[i];
        cb += b[i];
        if (cb > ca + tol) b_dominates = false;
        if (ca > cb + tol) a_dominates = false;
    }
    if (a_dominates && b_dominates) return 0;
    if (b_dominates) return 1;
    if (a_dominates) return -1;
    return std::nullopt;
}

Monotonicity classify_profile_monotonicity(const StrategyProfile& profile, double tol) {
    std::vector<int> degs = profile.degrees();
    if (degs.size() < 2) return Monotonicity::constant;
    bool can_up = true, can_down = true;
    for (std::size_t i = 0; i + 1 < degs.size(); ++i) {
        auto dir = fosd_direction(profile.law(degs[i]), profile.law(degs[i + 1]), tol);
        if (!dir) return Monotonicity::non_monotone;
        if (*dir > 0) can_down = false;
        if (*dir < 0) can_up = false;
    }
    if (can_up && can_down) return Monotonicity::constant;
    if (can_up) return Monotonicity::non_decreasing;
    if (can_down) return Monotonicity::non_increasing;
    return Monotonicity::non_monotone;
}

Monotonicity classify_sequence_monotonicity(const std::vector<double>& values, double tol) {
    if (values.size() < 2) return Monotonicity::constant;
    bool can_up = true, can_down = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i + 1] > values[i] + tol) can_down = false;
        if (values[i + 1] < values[i] - tol) can_up = false;
    }
    if (can_up && can_down) return Monotonicity::constant;
    if (can_up) return Monotonicity::non_decreasing;
    if (can_down) return Monotonicity::non_increasing;
    return Monotonicity::non_monotone;
}

namespace {

struct Atom {
    double weight;
    double action;
};

// Atoms of the (neighbor degree, neighbor action) law for one neighbor of a
// degree-d node under i.i.d.-style beliefs; zero-weight entries are dropped.
std::vector<Atom> neighbor_atoms(const NeighborBeliefs& beliefs, const StrategyProfile& profile,
                                 int degree) {
    const auto& row = beliefs.row(degree);
    std::vector<Atom> atoms;
    for (int nd = 1; nd < static_cast<int>(row.size()); ++nd) {
        double pd = row[static_cast<std::size_t>(nd)];
        if (pd == 0.0) continue;
        if (!profile.has(nd))
            throw std::invalid_argument("expected utility: profile missing degree " +
                                        std::to_string(nd) +
                                        " which the beliefs reach from degree " +
                                        std::to_string(degree));
        const auto& law = profile.law(nd);
        for (int a = 0; a < static_cast<int>(law.size()); ++a) {
            double pa = law[static_cast<std::size_t>(a)];
            if (pa == 0.0) continue;
            atoms.push_back({pd * pa, profile.grid()[a]});
        }
    }
    return atoms;
}

long long checked_pow(long long base, int exp, long long cap) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / std::max<long long>(base, 1)) return cap + 1;
        v *= base;
    }
    return v;
}

template <typename LeafFn>
void walk_iid_lattice(const std::vector<Atom>& atoms, int degree, std::vector<double>& actions,
                      double prob, int depth, LeafFn&& leaf) {
    if (depth == degree) {
        leaf(prob, actions);
        return;
    }
    for (const Atom& at : atoms) {
        actions[static_cast<std::size_t>(depth)] = at.action;
        walk_iid_lattice(atoms, degree, actions, prob * at.weight, depth + 1, leaf);
    }
}

// Per-neighbor action supports for a fixed joint degree tuple.
template <typename LeafFn>
void walk_action_lattice(const StrategyProfile& profile, const std::vector<int>& tuple,
                         std::vector<double>& actions, double prob, std::size_t depth,
                         LeafFn&& leaf) {
    if (depth == tuple.size()) {
        leaf(prob, actions);
        return;
    }
    const auto& law = profile.law(tuple[depth]);
    for (int a = 0; a < static_cast<int>(law.size()); ++a) {
        double pa = law[static_cast<std::size_t>(a)];
        if (pa == 0.0) continue;
        actions[depth] = profile.grid()[a];
        walk_action_lattice(profile, tuple, actions, prob * pa, depth + 1, leaf);
    }
}

void require_degree(const NeighborBeliefs& beliefs, int degree) {
    if (degree < 1) throw std::invalid_argument("expected utility: degree must be >= 1");
    if (!beliefs.defined_for(degree))
        throw std::invalid_argument("expected utility: no beliefs for degree " +
                                    std::to_string(degree));
}

long long joint_term_count(const NeighborBeliefs& beliefs, const StrategyProfile& profile,
                           int degree, long long cap) {
    long long total = 0;
    for (const auto& [tuple, p] : beliefs.joint(degree)) {
        if (p == 0.0) continue;
        long long terms = 1;
        for (int nd : tuple) {
            if (!profile.has(nd))
                throw std::invalid_argument("expected utility: profile missing degree " +
                                            std::to_string(nd));
            long long s = static_cast<long long>(profile.support(nd).size());
            if (terms > cap / std::max<long long>(s, 1)) return cap + 1;
            terms *= s;
        }
        total += terms;
        if (total > cap) return cap + 1;
    }
    return total;
}

[[noreturn]] void budget_refusal(long long terms, const EnumerationBudget& budget) {
    throw BudgetError("exact expected-utility enumeration needs " +
                      (terms == 0 ? std::string("more than the allowed")
                                  : std::to_string(terms)) +
                      " terms, over the budget of " + std::to_string(budget.max_terms) +
                      "; use the Monte Carlo estimator for this case");
}

// Shared enumeration driver: calls `leaf(prob, actions)` for every neighbor
// configuration reachable under the beliefs and profile.
template <typename LeafFn>
void enumerate_configurations(const NeighborBeliefs& beliefs, const StrategyProfile& profile,
                              int degree, const EnumerationBudget& budget, LeafFn&& leaf) {
    require_degree(beliefs, degree);
    if (budget.max_terms < 1) throw std::invalid_argument("EnumerationBudget: max_terms must be >= 1");

    std::vector<double> actions(static_cast<std::size_t>(degree));
    if (beliefs.kind() == BeliefKind::full_joint) {
        long long terms = joint_term_count(beliefs, profile, degree, budget.max_terms);
        if (terms > budget.max_terms) budget_refusal(0, budget);
        for (const auto& [tuple, p] : beliefs.joint(degree)) {
            if (p == 0.0) continue;
            walk_action_lattice(profile, tuple, actions, p, 0, leaf);
        }
        return;
    }

    std::vector<Atom> atoms = neighbor_atoms(beliefs, profile, degree);
    if (atoms.empty()) throw std::invalid_argument("expected utility: beliefs row has no support");
    long long terms =
        checked_pow(static_cast<long long>(atoms.size()), degree, budget.max_terms);
    if (terms > budget.max_terms) budget_refusal(0, budget);
    walk_iid_lattice(atoms, degree, actions, 1.0, 0, leaf);
}

} // namespace

double expected_utility_exact(const PayoffModel& model, const NeighborBeliefs& beliefs,
                              const StrategyProfile& profile, int degree, double own_action,
                              const EnumerationBudget& budget) {
    double total = 0.0;
    enumerate_configurations(beliefs, profile, degree, budget,
                             [&](double prob, const std::vector<double>& actions) {
                                 total += prob * utility(model, own_action, actions);
                             });
    return total;
}

std::vector<double> expected_utility_row(const PayoffModel& model, const NeighborBeliefs& beliefs,
                                         const StrategyProfile& profile, int degree,
                                         const EnumerationBudget& budget) {
    const auto& pts = profile.grid().points();
    std::vector<double> row(pts.size(), 0.0);
    enumerate_configurations(beliefs, profile, degree, budget,
                             [&](double prob, const std::vector<double>& actions) {
                                 for (std::size_t i = 0; i < pts.size(); ++i)
                                     row[i] += prob * utility(model, pts[i], actions);
                             });
    return row;
}

McEstimate expected_utility_mc(const PayoffModel& model, const NeighborBeliefs& beliefs,
                               const StrategyProfile& profile, int degree, double own_action,
                               int samples, std::uint64_t seed) {
    require_degree(beliefs, degree);
    if (samples < 100)
        throw std::invalid_argument("expected_utility_mc: need at least 100 samples");

    Rng rng(derive_seed(seed, "eu-mc"));
    std::vector<double> actions(static_cast<std::size_t>(degree));

    // Pre-resolve the joint tuples for CDF inversion when needed.
    std::vector<const std::vector<int>*> tuples;
    std::vector<double> tuple_probs;
    if (beliefs.kind() == BeliefKind::full_joint) {
        for (const auto& [tuple, p] : beliefs.joint(degree)) {
            tuples.push_back(&tuple);
            tuple_probs.push_back(p);
        }
    }

    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
        if (beliefs.kind() == BeliefKind::full_joint) {
            const std::vector<int>& tuple = *tuples[rng.sample_pmf(tuple_probs)];
            for (int j = 0; j < degree; ++j) {
                const auto& law = profile.law(tuple[static_cast<std::size_t>(j)]);
                actions[static_cast<std::size_t>(j)] =
                    profile.grid()[static_cast<int>(rng.sample_pmf(law))];
            }
        } else {
            const auto& row = beliefs.row(degree);
            for (int j = 0; j < degree; ++j) {
                int nd = static_cast<int>(rng.sample_pmf(row));
                if (!profile.has(nd))
                    throw std::invalid_argument("expected utility: profile missing degree " +
                                                std::to_string(nd));
                const auto& law = profile.law(nd);
                actions[static_cast<std::size_t>(j)] =
                    profile.grid()[static_cast<int>(rng.sample_pmf(law))];
            }
        }
        double u = utility(model, own_action, actions);
        sum += u;
        sumsq += u * u;
    }

    McEstimate est;
    est.samples = samples;
    est.estimate = sum / samples;
    double var = (sumsq - sum * sum / samples) / (samples - 1);
    est.std_error = std::sqrt(std::max(var, 0.0) / samples);
    return est;
}

void write_csv(const ExpectedUtilityTable& table, const std::string& path) {
    CsvWriter csv(path, {"degree", "action", "value", "std_error"});
    for (const EuRow& r : table.rows)
        csv.row({csv_int(r.degree), csv_num(r.action), csv_num(r.value), csv_num(r.std_error)});
    csv.close();
}

std::string to_string(DegreeInteractionVerdict v) {
    switch (v) {
        case DegreeInteractionVerdict::complements: return "complements";
        case DegreeInteractionVerdict::substitutes: return "substitutes";
        case DegreeInteractionVerdict::both: return "both";
        case DegreeInteractionVerdict::neither: return "neither";
    }
    return "unknown";
}

DegreeInteractionReport check_degree_complementarity(
    const PayoffModel& model, const NeighborBeliefs& beliefs, const StrategyProfile& profile,
    const std::vector<std::pair<int, int>>& degree_pairs, double tol,
    const EnumerationBudget& budget) {
    if (degree_pairs.empty())
        throw std::invalid_argument("check_degree_complementarity: no degree pairs");
    for (const auto& [lo, hi] : degree_pairs)
        if (hi <= lo)
            throw std::invalid_argument("check_degree_complementarity: pairs must satisfy d' > d");

    DegreeInteractionReport report;
    report.profile_monotonicity = classify_profile_monotonicity(profile);
    switch (report.profile_monotonicity) {
        case Monotonicity::constant:
            report.tested_increasing = report.tested_decreasing = true;
            break;
        case Monotonicity::non_decreasing:
            report.tested_increasing = true;
            break;
        case Monotonicity::non_increasing:
            report.tested_decreasing = true;
            break;
        case Monotonicity::non_monotone:
            throw std::domain_error(
                "check_degree_complementarity: profile must be monotone in degree");
    }

    // One expected-utility row per distinct degree.
    std::map<int, std::vector<double>> eu;
    for (const auto& [lo, hi] : degree_pairs) {
        if (!eu.count(lo)) eu[lo] = expected_utility_row(model, beliefs, profile, lo, budget);
        if (!eu.count(hi)) eu[hi] = expected_utility_row(model, beliefs, profile, hi, budget);
    }

    const auto& pts = profile.grid().points();
    report.increasing_holds = report.tested_increasing;
    report.decreasing_holds = report.tested_decreasing;
    for (const auto& [lo, hi] : degree_pairs) {
        const auto& row_lo = eu[lo];
        const auto& row_hi = eu[hi];
        for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                double delta_lo = row_lo[b] - row_lo[a];
                double delta_hi = row_hi[b] - row_hi[a];
                ++report.comparisons;
                if (report.tested_increasing && delta_hi < delta_lo - tol) {
                    report.increasing_holds = false;
                    if (!report.increasing_violation)
                        report.increasing_violation = DegreeInteractionWitness{
                            lo, hi, pts[a], pts[b], delta_lo, delta_hi};
                }
                if (report.tested_decreasing && delta_hi > delta_lo + tol) {
                    report.decreasing_holds = false;
                    if (!report.decreasing_violation)
                        report.decreasing_violation = DegreeInteractionWitness{
                            lo, hi, pts[a], pts[b], delta_lo, delta_hi};
                }
            }
        }
    }

    if (report.tested_increasing && report.tested_decreasing) {
        if (report.increasing_holds && report.decreasing_holds)
            report.verdict = DegreeInteractionVerdict::both;
        else if (report.increasing_holds)
            report.verdict = DegreeInteractionVerdict::complements;
        else if (report.decreasing_holds)
            report.verdict = DegreeInteractionVerdict::substitutes;
        else
            report.verdict = DegreeInteractionVerdict::neither;
    } else if (report.tested_increasing) {
        report.verdict = report.increasing_holds ? DegreeInteractionVerdict::complements
                                                 : DegreeInteractionVerdict::neither;
    } else {
        report.verdict = report.decreasing_holds ? DegreeInteractionVerdict::substitutes
                                                 : DegreeInteractionVerdict::neither;
    }
    return report;
}

} // namespace secgame
