#include "secgame/instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secgame/rng.hpp"

namespace secgame {

NeighborBeliefs fosd_family(const std::vector<int>& degrees, int max_degree, double strength,
                            bool increasing) {
    if (degrees.empty()) throw std::invalid_argument("fosd_family: no degrees");
    if (!(strength > 0.0)) throw std::invalid_argument("fosd_family: strength must be > 0");

    const double mid = 0.5 * (1.0 + max_degree);
    std::map<int, std::vector<double>> rows;
    for (int d : degrees) {
        double tilt = strength * (static_cast<double>(d) - mid) * (increasing ? 1.0 : -1.0);
        std::vector<double> row(static_cast<std::size_t>(max_degree) + 1, 0.0);
        double sum = 0.0;
        for (int nd = 1; nd <= max_degree; ++nd) {
            row[static_cast<std::size_t>(nd)] = std::exp(tilt * nd);
            sum += row[static_cast<std::size_t>(nd)];
        }
        for (double& p : row) p /= sum;
        // Renormalize once more so the row passes the strict pmf check.
        double s2 = 0.0;
        for (double p : row) s2 += p;
        for (double& p : row) p /= s2;
        rows[d] = std::move(row);
    }
    return NeighborBeliefs::conditional(max_degree, std::move(rows));
}

NeighborBeliefs independent_uniform(int max_degree) {
    std::vector<double> row(static_cast<std::size_t>(max_degree) + 1, 0.0);
    for (int nd = 1; nd <= max_degree; ++nd)
        row[static_cast<std::size_t>(nd)] = 1.0 / max_degree;
    double sum = 0.0;
    for (double p : row) sum += p;
    for (double& p : row) p /= sum;
    return NeighborBeliefs::independent(max_degree, std::move(row));
}

std::vector<Instance> solver_suite() {
    const std::vector<int> degrees{1, 2, 3};
    const int max_degree = 3;
    const double strength = 0.8;

    PayoffModel substitutes =
        PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::quadratic, 0.4);
    PayoffModel separable =
        PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::quadratic, 0.6);

    SolverConfig solver;
    solver.damping = 0.5;
    solver.max_iterations = 2000;
    solver.epsilon = 1e-9;

    struct BeliefChoice {
        const char* tag;
        NeighborBeliefs beliefs;
        AssociationVerdict verdict;
    };
    std::vector<BeliefChoice> belief_set;
    belief_set.push_back({"positive", fosd_family(degrees, max_degree, strength, true),
                          AssociationVerdict::satisfies_positive});
    belief_set.push_back({"negative", fosd_family(degrees, max_degree, strength, false),
                          AssociationVerdict::satisfies_negative});
    belief_set.push_back({"independent", independent_uniform(max_degree),
                          AssociationVerdict::satisfies_positive});

    std::vector<Instance> suite;
    for (const BeliefChoice& b : belief_set) {
        suite.push_back(Instance{std::string("substitutes-") + b.tag, substitutes, b.beliefs,
                                 ActionGrid::uniform(21), degrees, b.verdict, true, solver});
    }
    for (const BeliefChoice& b : belief_set) {
        suite.push_back(Instance{std::string("separable-") + b.tag, separable, b.beliefs,
                                 ActionGrid::uniform(21), degrees, b.verdict, false, solver});
    }
    return suite;
}

namespace {

std::vector<int> range_degrees(int max_degree) {
    std::vector<int> out;
    for (int d = 1; d <= max_degree; ++d) out.push_back(d);
    return out;
}

// Random pure profile with the requested direction on an `levels`-point grid.
std::vector<int> monotone_indices(Rng& rng, int count, int levels, bool non_decreasing) {
    std::vector<int> idx(static_cast<std::size_t>(count));
    int cur = rng.uniform_int(0, levels - 1);
    for (int i = 0; i < count; ++i) {
        idx[static_cast<std::size_t>(i)] = cur;
        int step = rng.uniform_int(0, 2);
        cur = non_decreasing ? std::min(levels - 1, cur + step) : std::max(0, cur - step);
    }
    return idx;
}

} // namespace

std::vector<AuditCase> degree_interaction_suite(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("degree_interaction_suite: count must be >= 1");

    std::vector<AuditCase> cases;
    cases.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, "audit-case", static_cast<std::uint64_t>(i)));
        const bool complements_side = i % 2 == 0;
        const int max_degree = rng.uniform_int(3, 4);
        const std::vector<int> degrees = range_degrees(max_degree);
        const double strength = rng.uniform(0.3, 1.0);

        AuditCase c{Instance{"", PayoffModel{}, independent_uniform(max_degree),
                             ActionGrid::uniform(5), degrees, AssociationVerdict::neither, false,
                             SolverConfig{}},
                    StrategyProfile(ActionGrid::uniform(5)), complements_side, 1};
        c.subset_size = rng.uniform_int(1, 2);

        if (complements_side) {
            // Additively separable game, positively associated beliefs,
            // non-decreasing profile.
            double lambda = rng.uniform(0.2, 0.9);
            double c0 = rng.uniform(0.1, 0.8);
            c.instance.model =
                PayoffModel::sum(BenefitFamily::power, 1.0, lambda, CostFamily::quadratic, c0);
            c.instance.beliefs = fosd_family(degrees, max_degree, strength, true);
            c.instance.intended_association = AssociationVerdict::satisfies_positive;
            c.instance.grid = ActionGrid::uniform(5);
            c.instance.name = "audit-separable-" + std::to_string(i);

            StrategyProfile profile(c.instance.grid);
            std::vector<int> idx = monotone_indices(rng, max_degree, 5, true);
            for (int d = 1; d <= max_degree; ++d)
                profile.set_pure(d, idx[static_cast<std::size_t>(d - 1)]);
            c.profile = std::move(profile);
        } else {
            // Strictly concave game (or the binary protection game),
            // negatively associated beliefs, non-increasing profile.
            c.instance.beliefs = fosd_family(degrees, max_degree, strength, false);
            c.instance.intended_association = AssociationVerdict::satisfies_negative;
            c.instance.expect_non_increasing_actions = true;

            if (i % 4 == 1) {
                c.instance.model = PayoffModel::best_shot(rng.uniform(0.1, 0.9));
                c.instance.grid = ActionGrid::binary();
                c.instance.name = "audit-binary-" + std::to_string(i);

                StrategyProfile profile(c.instance.grid);
                std::vector<double> qs(static_cast<std::size_t>(max_degree));
                for (double& q : qs) q = rng.uniform(0.05, 0.95);
                std::sort(qs.begin(), qs.end(), std::greater<>());
                for (int d = 1; d <= max_degree; ++d) {
                    double q = qs[static_cast<std::size_t>(d - 1)];
                    profile.set_law(d, {1.0 - q, q});
                }
                c.profile = std::move(profile);
            } else {
                BenefitFamily fam =
                    rng.uniform01() < 0.5 ? BenefitFamily::power : BenefitFamily::log2_shifted;
                double alpha = rng.uniform(0.3, 0.9);
                double lambda = rng.uniform(0.3, 1.0);
                CostFamily cost =
                    rng.uniform01() < 0.5 ? CostFamily::linear : CostFamily::quadratic;
                double c0 = rng.uniform(0.1, 0.6);
                c.instance.model = PayoffModel::sum(fam, alpha, lambda, cost, c0);
                c.instance.grid = ActionGrid::uniform(5);
                c.instance.name = "audit-concave-" + std::to_string(i);

                StrategyProfile profile(c.instance.grid);
                std::vector<int> idx = monotone_indices(rng, max_degree, 5, false);
                for (int d = 1; d <= max_degree; ++d)
                    profile.set_pure(d, idx[static_cast<std::size_t>(d - 1)]);
                c.profile = std::move(profile);
            }
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

} // namespace secgame
