#include "secgame/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

#include "secgame/rng.hpp"

namespace secgame {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_pmf(const std::vector<double>& pmf, const std::string& what) {
    require(!pmf.empty(), what + ": empty pmf");
    double sum = 0.0;
    for (double p : pmf) {
        require(p >= 0.0, what + ": negative mass");
        sum += p;
    }
    require(std::fabs(sum - 1.0) <= 1e-12, what + ": mass does not sum to 1");
}

std::string tuple_str(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

} // namespace

DegreeDistribution::DegreeDistribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {
    check_pmf(pmf_, "DegreeDistribution");
    require(pmf_.size() >= 2, "DegreeDistribution: max_degree must be >= 1");
}

double DegreeDistribution::mean() const {
    double m = 0.0;
    for (std::size_t d = 0; d < pmf_.size(); ++d) m += static_cast<double>(d) * pmf_[d];
    return m;
}

NeighborBeliefs NeighborBeliefs::independent(int max_degree, std::vector<double> neighbor_pmf) {
    require(max_degree >= 1, "independent beliefs: max_degree must be >= 1");
    require(static_cast<int>(neighbor_pmf.size()) == max_degree + 1,
            "independent beliefs: pmf must have max_degree+1 entries");
    require(neighbor_pmf[0] == 0.0, "independent beliefs: neighbor degree 0 must carry no mass");
    check_pmf(neighbor_pmf, "independent beliefs");

    NeighborBeliefs b;
    b.kind_ = BeliefKind::independent;
    b.max_degree_ = max_degree;
    for (int d = 1; d <= max_degree; ++d) b.rows_[d] = neighbor_pmf;
    return b;
}

NeighborBeliefs NeighborBeliefs::conditional(int max_degree,
                                             std::map<int, std::vector<double>> rows) {
    require(max_degree >= 1, "conditional beliefs: max_degree must be >= 1");
    require(!rows.empty(), "conditional beliefs: no rows");
    for (const auto& [d, row] : rows) {
        require(d >= 1 && d <= max_degree, "conditional beliefs: own degree out of range");
        require(static_cast<int>(row.size()) == max_degree + 1,
                "conditional beliefs: row for degree " + std::to_string(d) +
                    " must have max_degree+1 entries");
        require(row[0] == 0.0, "conditional beliefs: neighbor degree 0 must carry no mass");
        check_pmf(row, "conditional beliefs: row for degree " + std::to_string(d));
    }

    NeighborBeliefs b;
    b.kind_ = BeliefKind::conditional_iid;
    b.max_degree_ = max_degree;
    b.rows_ = std::move(rows);
    return b;
}

NeighborBeliefs NeighborBeliefs::regular(const std::vector<int>& degrees, int max_degree) {
    require(!degrees.empty(), "regular beliefs: no degrees");
    std::map<int, std::vector<double>> rows;
    for (int d : degrees) {
        require(d >= 1 && d <= max_degree, "regular beliefs: degree out of range");
        std::vector<double> row(static_cast<std::size_t>(max_degree) + 1, 0.0);
        row[static_cast<std::size_t>(d)] = 1.0;
        rows[d] = std::move(row);
    }
    NeighborBeliefs b = conditional(max_degree, std::move(rows));
    return b;
}

NeighborBeliefs NeighborBeliefs::full_joint(int max_degree, std::map<int, JointTable> joints,
                                            int joint_degree_cap) {
    require(max_degree >= 1, "full_joint beliefs: max_degree must be >= 1");
    require(!joints.empty(), "full_joint beliefs: no joints");
    for (const auto& [d, table] : joints) {
        require(d >= 1 && d <= max_degree, "full_joint beliefs: own degree out of range");
        require(d <= joint_degree_cap,
                "full_joint beliefs: own degree " + std::to_string(d) +
                    " exceeds the joint-table cap of " + std::to_string(joint_degree_cap));
        require(!table.empty(), "full_joint beliefs: empty joint for degree " + std::to_string(d));
        double sum = 0.0;
        for (const auto& [tuple, p] : table) {
            require(static_cast<int>(tuple.size()) == d,
                    "full_joint beliefs: tuple arity mismatch for degree " + std::to_string(d));
            for (int nd : tuple)
                require(nd >= 1 && nd <= max_degree,
                        "full_joint beliefs: neighbor degree out of range in " + tuple_str(tuple));
            require(p >= 0.0, "full_joint beliefs: negative mass at " + tuple_str(tuple));
            sum += p;
        }
        require(std::fabs(sum - 1.0) <= 1e-12,
                "full_joint beliefs: joint for degree " + std::to_string(d) + " does not sum to 1");

        // Exchangeability: sorting a tuple must not change its probability.
        for (const auto& [tuple, p] : table) {
            std::vector<int> perm = tuple;
            std::sort(perm.begin(), perm.end());
            do {
                auto it = table.find(perm);
                require(it != table.end() && std::fabs(it->second - p) <= 1e-12,
                        "full_joint beliefs: joint for degree " + std::to_string(d) +
                            " is not exchangeable at " + tuple_str(tuple));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    NeighborBeliefs b;
    b.kind_ = BeliefKind::full_joint;
    b.max_degree_ = max_degree;
    b.joints_ = std::move(joints);
    return b;
}

std::vector<int> NeighborBeliefs::own_degrees() const {
    std::vector<int> out;
    if (kind_ == BeliefKind::full_joint) {
        for (const auto& [d, _] : joints_) out.push_back(d);
    } else {
        for (const auto& [d, _] : rows_) out.push_back(d);
    }
    return out;
}

bool NeighborBeliefs::defined_for(int own_degree) const {
    if (kind_ == BeliefKind::full_joint) return joints_.count(own_degree) > 0;
    return rows_.count(own_degree) > 0;
}

const std::vector<double>& NeighborBeliefs::row(int own_degree) const {
    if (kind_ == BeliefKind::full_joint)
        throw std::logic_error("row(): full_joint beliefs have no conditional row");
    auto it = rows_.find(own_degree);
    if (it == rows_.end())
        throw std::invalid_argument("row(): no belief defined for own degree " +
                                    std::to_string(own_degree));
    return it->second;
}

std::vector<int> NeighborBeliefs::row_support(int own_degree) const {
    const auto& r = row(own_degree);
    std::vector<int> support;
    for (int d = 1; d < static_cast<int>(r.size()); ++d)
        if (r[static_cast<std::size_t>(d)] > 0.0) support.push_back(d);
    return support;
}

const JointTable& NeighborBeliefs::joint(int own_degree) const {
    if (kind_ != BeliefKind::full_joint)
        throw std::logic_error("joint(): beliefs are not full_joint");
    auto it = joints_.find(own_degree);
    if (it == joints_.end())
        throw std::invalid_argument("joint(): no belief defined for own degree " +
                                    std::to_string(own_degree));
    return it->second;
}

std::vector<int> NeighborBeliefs::neighbor_degree_support() const {
    std::set<int> s;
    if (kind_ == BeliefKind::full_joint) {
        for (const auto& [_, table] : joints_)
            for (const auto& [tuple, p] : table)
                if (p > 0.0)
                    for (int nd : tuple) s.insert(nd);
    } else {
        for (const auto& [d, _] : rows_)
            for (int nd : row_support(d)) s.insert(nd);
    }
    return {s.begin(), s.end()};
}

MonotoneTable::MonotoneTable(int domain_max, int arity, std::vector<double> values,
                             std::string label)
    : domain_max_(domain_max), arity_(arity), values_(std::move(values)),
      label_(std::move(label)) {
    require(domain_max_ >= 1, "MonotoneTable: domain_max must be >= 1");
    require(arity_ >= 1, "MonotoneTable: arity must be >= 1");
    std::size_t expect = 1;
    for (int i = 0; i < arity_; ++i) expect *= static_cast<std::size_t>(domain_max_);
    require(values_.size() == expect, "MonotoneTable: value count does not match domain size");
}

std::size_t MonotoneTable::index_of(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity_)
        throw std::invalid_argument("MonotoneTable: tuple arity mismatch");
    std::size_t idx = 0;
    for (int v : tuple) {
        if (v < 1 || v > domain_max_)
            throw std::invalid_argument("MonotoneTable: coordinate out of domain in " +
                                        tuple_str(tuple));
        idx = idx * static_cast<std::size_t>(domain_max_) + static_cast<std::size_t>(v - 1);
    }
    return idx;
}

double MonotoneTable::operator()(const std::vector<int>& tuple) const {
    return values_[index_of(tuple)];
}

MonotoneTable MonotoneTable::identity_sum(int domain_max, int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain_max);
    std::vector<double> vals(n);
    std::vector<int> tuple(static_cast<std::size_t>(arity), 1);
    for (std::size_t idx = 0; idx < n; ++idx) {
        double s = 0.0;
        for (int v : tuple) s += v;
        vals[idx] = s;
        for (int pos = arity - 1; pos >= 0; --pos) {
            if (tuple[static_cast<std::size_t>(pos)] < domain_max) {
                ++tuple[static_cast<std::size_t>(pos)];
                break;
            }
            tuple[static_cast<std::size_t>(pos)] = 1;
        }
    }
    return MonotoneTable(domain_max, arity, std::move(vals), "identity-sum");
}

MonotoneTable MonotoneTable::coordinate_max(int domain_max, int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain_max);
    std::vector<double> vals(n);
    std::vector<int> tuple(static_cast<std::size_t>(arity), 1);
    for (std::size_t idx = 0; idx < n; ++idx) {
        vals[idx] = static_cast<double>(*std::max_element(tuple.begin(), tuple.end()));
        for (int pos = arity - 1; pos >= 0; --pos) {
            if (tuple[static_cast<std::size_t>(pos)] < domain_max) {
                ++tuple[static_cast<std::size_t>(pos)];
                break;
            }
            tuple[static_cast<std::size_t>(pos)] = 1;
        }
    }
    return MonotoneTable(domain_max, arity, std::move(vals), "coordinate-max");
}

bool MonotoneTable::is_monotone() const {
    // Check every unit increment along every axis; this implies monotonicity
    // for arbitrary coordinate-wise increases.
    std::vector<int> tuple(static_cast<std::size_t>(arity_), 1);
    const std::size_t n = values_.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        for (int axis = 0; axis < arity_; ++axis) {
            if (tuple[static_cast<std::size_t>(axis)] >= domain_max_) continue;
            std::vector<int> up = tuple;
            ++up[static_cast<std::size_t>(axis)];
            if (values_[index_of(up)] < values_[idx]) return false;
        }
        for (int pos = arity_ - 1; pos >= 0; --pos) {
            if (tuple[static_cast<std::size_t>(pos)] < domain_max_) {
                ++tuple[static_cast<std::size_t>(pos)];
                break;
            }
            tuple[static_cast<std::size_t>(pos)] = 1;
        }
    }
    return true;
}

std::vector<MonotoneTable> generate_monotone_test_functions(int domain_max, int arity,
                                                            int how_many, std::uint64_t seed) {
    require(how_many >= 1, "generate_monotone_test_functions: how_many must be >= 1");
    require(domain_max >= 1 && arity >= 1, "generate_monotone_test_functions: bad domain");

    std::vector<MonotoneTable> out;
    out.reserve(static_cast<std::size_t>(how_many));
    out.push_back(MonotoneTable::identity_sum(domain_max, arity));
    if (how_many >= 2) out.push_back(MonotoneTable::coordinate_max(domain_max, arity));
    if (static_cast<int>(out.size()) > how_many)
        out.erase(out.begin() + how_many, out.end());

    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain_max);

    int k = 0;
    while (static_cast<int>(out.size()) < how_many) {
        Rng rng(derive_seed(seed, "monotone-fn", static_cast<std::uint64_t>(k)));
        // Start from non-negative increments, then prefix-sum along each axis
        // in turn; the result is non-decreasing in every coordinate.
        std::vector<double> vals(n);
        for (double& v : vals) v = rng.uniform01();

        std::size_t stride = 1;
        for (int axis = arity - 1; axis >= 0; --axis) {
            for (std::size_t idx = 0; idx < n; ++idx) {
                std::size_t coord = (idx / stride) % static_cast<std::size_t>(domain_max);
                if (coord > 0) vals[idx] += vals[idx - stride];
            }
            stride *= static_cast<std::size_t>(domain_max);
        }

        char label[32];
        std::snprintf(label, sizeof(label), "random-%d", k);
        out.emplace_back(domain_max, arity, std::move(vals), label);
        ++k;
    }
    return out;
}

namespace {

// Sum over tuples in {support}^m of P(tuple) * F(tuple) for i.i.d. rows.
double iid_subset_expectation(const std::vector<double>& row, const MonotoneTable& f, int m) {
    std::vector<int> support;
    for (int d = 1; d < static_cast<int>(row.size()); ++d)
        if (row[static_cast<std::size_t>(d)] > 0.0) support.push_back(d);
    if (support.empty()) throw std::invalid_argument("subset_expectation: empty belief row");

    std::vector<int> tuple(static_cast<std::size_t>(m));
    double total = 0.0;
    // Odometer over support^m.
    std::vector<std::size_t> pos(static_cast<std::size_t>(m), 0);
    while (true) {
        double p = 1.0;
        for (int i = 0; i < m; ++i) {
            tuple[static_cast<std::size_t>(i)] = support[pos[static_cast<std::size_t>(i)]];
            p *= row[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
        }
        total += p * f(tuple);

        int axis = m - 1;
        while (axis >= 0 && pos[static_cast<std::size_t>(axis)] + 1 == support.size()) {
            pos[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++pos[static_cast<std::size_t>(axis)];
    }
    return total;
}

} // namespace

double subset_expectation(const NeighborBeliefs& beliefs, int own_degree, const MonotoneTable& f,
                          int subset_size) {
    if (subset_size < 1)
        throw std::invalid_argument("subset_expectation: subset_size must be >= 1");
    if (subset_size > own_degree)
        throw std::domain_error("subset_expectation: subset_size " + std::to_string(subset_size) +
                                " exceeds own degree " + std::to_string(own_degree));
    if (!beliefs.defined_for(own_degree))
        throw std::invalid_argument("subset_expectation: no belief defined for own degree " +
                                    std::to_string(own_degree));
    if (f.arity() != subset_size)
        throw std::invalid_argument("subset_expectation: F arity does not match subset_size");
    if (f.domain_max() < beliefs.max_degree())
        throw std::invalid_argument(
            "subset_expectation: F domain does not cover reachable neighbor degrees");

    if (beliefs.kind() == BeliefKind::full_joint) {
        // Marginalize the joint onto the first subset_size coordinates;
        // exchangeability makes this choice immaterial.
        const JointTable& table = beliefs.joint(own_degree);
        double total = 0.0;
        std::vector<int> head(static_cast<std::size_t>(subset_size));
        for (const auto& [tuple, p] : table) {
            if (p == 0.0) continue;
            std::copy(tuple.begin(), tuple.begin() + subset_size, head.begin());
            total += p * f(head);
        }
        return total;
    }
    return iid_subset_expectation(beliefs.row(own_degree), f, subset_size);
}

std::string to_string(AssociationVerdict v) {
    switch (v) {
        case AssociationVerdict::satisfies_positive: return "positive";
        case AssociationVerdict::satisfies_negative: return "negative";
        case AssociationVerdict::neither: return "neither";
    }
    return "unknown";
}

AssociationTest::AssociationTest(int subset_size_, std::vector<MonotoneTable> functions_,
                                 std::vector<std::pair<int, int>> degree_pairs_)
    : subset_size(subset_size_), functions(std::move(functions_)),
      degree_pairs(std::move(degree_pairs_)) {
    require(subset_size >= 1, "AssociationTest: subset_size must be >= 1");
    require(!functions.empty(), "AssociationTest: no test functions");
    require(!degree_pairs.empty(), "AssociationTest: no degree pairs");
    for (const auto& f : functions) {
        require(f.arity() == subset_size, "AssociationTest: function arity != subset_size");
        require(f.is_monotone(), "AssociationTest: function '" + f.label() +
                                     "' fails the monotonicity scan");
    }
    for (const auto& [k, kp] : degree_pairs) {
        require(kp > k, "AssociationTest: degree pairs must satisfy k' > k");
        require(k >= subset_size,
                "AssociationTest: subset_size exceeds compared degree " + std::to_string(k));
    }
}

AssociationReport check_association(const NeighborBeliefs& beliefs, const AssociationTest& test,
                                    double tol) {
    AssociationReport report;
    bool all_weakly_up = true;    // every diff >= -tol
    bool all_strictly_down = true; // every diff < -tol

    for (const auto& [k, kp] : test.degree_pairs) {
        for (std::size_t fi = 0; fi < test.functions.size(); ++fi) {
            const MonotoneTable& f = test.functions[fi];
            AssociationRow row;
            row.k = k;
            row.k_prime = kp;
            row.f_index = static_cast<int>(fi);
            row.f_label = f.label();
            row.e_k = subset_expectation(beliefs, k, f, test.subset_size);
            row.e_k_prime = subset_expectation(beliefs, kp, f, test.subset_size);
            row.diff = row.e_k_prime - row.e_k;

            if (row.diff < -tol) {
                all_weakly_up = false;
                if (!report.positive_violation) report.positive_violation = row;
            } else {
                all_strictly_down = false;
                if (!report.negative_violation) report.negative_violation = row;
            }
            report.rows.push_back(std::move(row));
        }
    }

    if (all_weakly_up)
        report.verdict = AssociationVerdict::satisfies_positive;
    else if (all_strictly_down)
        report.verdict = AssociationVerdict::satisfies_negative;
    else
        report.verdict = AssociationVerdict::neither;
    return report;
}

} // namespace secgame
