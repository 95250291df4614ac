#include "secgame/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secgame/rng.hpp"

namespace secgame {

PayoffModel PayoffModel::sum(BenefitFamily benefit, double alpha, double lambda, CostFamily cost,
                             double cost_scale) {
    PayoffModel m;
    m.kind = GameKind::sum_of_investments;
    m.benefit = benefit;
    m.alpha = alpha;
    m.lambda = lambda;
    m.cost = cost;
    m.cost_scale = cost_scale;
    validate(m);
    return m;
}

PayoffModel PayoffModel::best_shot(double cost_scale) {
    PayoffModel m;
    m.kind = GameKind::best_shot;
    m.benefit = BenefitFamily::step;
    m.alpha = 1.0;
    m.lambda = 1.0;
    m.cost = CostFamily::linear;
    m.cost_scale = cost_scale;
    validate(m);
    return m;
}

void validate(const PayoffModel& model) {
    if (!(model.cost_scale >= 0.0) || !std::isfinite(model.cost_scale))
        throw std::invalid_argument("PayoffModel: cost_scale must be finite and >= 0");
    if (!(model.lambda >= 0.0) || !std::isfinite(model.lambda))
        throw std::invalid_argument("PayoffModel: lambda must be finite and >= 0");
    if (model.benefit == BenefitFamily::power) {
        if (!(model.alpha > 0.0 && model.alpha <= 1.0))
            throw std::invalid_argument("PayoffModel: power benefit needs 0 < alpha <= 1");
    }
    if (model.kind == GameKind::best_shot) {
        if (model.benefit != BenefitFamily::step)
            throw std::invalid_argument("PayoffModel: binary protection game uses the step benefit");
        if (model.lambda != 1.0)
            throw std::invalid_argument("PayoffModel: binary protection game fixes lambda = 1");
        if (model.cost != CostFamily::linear)
            throw std::invalid_argument("PayoffModel: binary protection game uses linear cost");
    } else {
        if (model.benefit == BenefitFamily::step)
            throw std::invalid_argument(
                "PayoffModel: step benefit is reserved for the binary protection game");
    }
}

double benefit_value(const PayoffModel& model, double z) {
    switch (model.benefit) {
        case BenefitFamily::linear_saturating: return std::min(z, 1.0);
        case BenefitFamily::power: return std::pow(z, model.alpha);
        case BenefitFamily::log2_shifted: return std::log2(1.0 + z);
        case BenefitFamily::step: return z >= 1.0 ? 1.0 : 0.0;
    }
    throw std::logic_error("benefit_value: unknown family");
}

double cost_value(const PayoffModel& model, double x) {
    switch (model.cost) {
        case CostFamily::linear: return model.cost_scale * x;
        case CostFamily::quadratic: return model.cost_scale * x * x;
    }
    throw std::logic_error("cost_value: unknown family");
}

namespace {

void check_action(const PayoffModel& model, double a, const char* what) {
    if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument(std::string(what) + " action must lie in [0,1]");
    if (model.kind == GameKind::best_shot && a != 0.0 && a != 1.0)
        throw std::invalid_argument(std::string(what) +
                                    " action must be exactly 0 or 1 in the binary game");
}

} // namespace

double utility(const PayoffModel& model, double own_action,
               const std::vector<double>& neighbor_actions) {
    check_action(model, own_action, "own");
    double spill = 0.0;
    for (double a : neighbor_actions) {
        check_action(model, a, "neighbor");
        spill += a;
    }
    double z = own_action + model.lambda * spill;
    return benefit_value(model, z) - cost_value(model, own_action);
}

namespace {

bool small_enough_for_exhaustive(int degree, std::size_t grid_size) {
    return degree <= 3 && grid_size <= 5;
}

void validate_grid(const std::vector<double>& grid, const PayoffModel& model) {
    if (grid.size() < 2) throw std::invalid_argument("action grid needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::invalid_argument("action grid point outside [0,1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("action grid must be strictly increasing");
        if (model.kind == GameKind::best_shot && grid[i] != 0.0 && grid[i] != 1.0)
            throw std::invalid_argument("binary game grid may contain only 0 and 1");
    }
}

// Odometer over grid^degree. Returns false when the odometer wraps.
bool advance(std::vector<std::size_t>& pos, std::size_t base) {
    for (std::size_t i = pos.size(); i-- > 0;) {
        if (++pos[i] < base) return true;
        pos[i] = 0;
    }
    return false;
}

} // namespace

ExternalityReport check_positive_externality(const PayoffModel& model, int degree,
                                             const std::vector<double>& action_grid,
                                             std::uint64_t seed, int samples) {
    validate(model);
    validate_grid(action_grid, model);
    if (degree < 1) throw std::invalid_argument("check_positive_externality: degree must be >= 1");

    ExternalityReport report;
    const std::size_t g = action_grid.size();

    auto test_case = [&](double own, std::vector<double>& xs, std::size_t j, std::size_t up_idx) {
        double before = utility(model, own, xs);
        double old = xs[j];
        xs[j] = action_grid[up_idx];
        double after = utility(model, own, xs);
        xs[j] = old;
        ++report.cases_checked;
        if (after < before - 1e-15) {
            report.holds = false;
            if (!report.violation) {
                ExternalityWitness w;
                w.own_action = own;
                w.neighbor_actions = xs;
                w.raised_neighbor = static_cast<int>(j);
                w.raised_to = action_grid[up_idx];
                w.utility_before = before;
                w.utility_after = after;
                report.violation = w;
            }
        }
    };

    if (small_enough_for_exhaustive(degree, g)) {
        report.exhaustive = true;
        for (std::size_t oi = 0; oi < g; ++oi) {
            std::vector<std::size_t> pos(static_cast<std::size_t>(degree), 0);
            std::vector<double> xs(static_cast<std::size_t>(degree));
            do {
                for (std::size_t j = 0; j < pos.size(); ++j) xs[j] = action_grid[pos[j]];
                for (std::size_t j = 0; j < pos.size(); ++j)
                    for (std::size_t up = pos[j] + 1; up < g; ++up)
                        test_case(action_grid[oi], xs, j, up);
            } while (advance(pos, g));
        }
        return report;
    }

    Rng rng(derive_seed(seed, "externality"));
    std::vector<double> xs(static_cast<std::size_t>(degree));
    std::vector<std::size_t> idx(static_cast<std::size_t>(degree));
    for (int s = 0; s < samples; ++s) {
        double own = action_grid[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(g) - 1))];
        for (std::size_t j = 0; j < xs.size(); ++j) {
            idx[j] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(g) - 1));
            xs[j] = action_grid[idx[j]];
        }
        std::size_t j = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(degree) - 1));
        if (idx[j] + 1 >= g) continue;
        std::size_t up = idx[j] + 1 + static_cast<std::size_t>(rng.uniform_int(
                                          0, static_cast<std::int64_t>(g - idx[j]) - 2));
        test_case(own, xs, j, up);
    }
    return report;
}

std::string to_string(InteractionKind k) {
    switch (k) {
        case InteractionKind::complements: return "complements";
        case InteractionKind::substitutes: return "substitutes";
        case InteractionKind::both: return "both";
        case InteractionKind::neither: return "neither";
    }
    return "unknown";
}

InteractionReport classify_strategic_interaction(const PayoffModel& model, int degree,
                                                 const std::vector<double>& action_grid,
                                                 double tol, std::uint64_t seed, int samples) {
    validate(model);
    validate_grid(action_grid, model);
    if (degree < 1)
        throw std::invalid_argument("classify_strategic_interaction: degree must be >= 1");

    InteractionReport report;
    const std::size_t g = action_grid.size();
    bool rises = false;   // some difference strictly increases along a profile raise
    bool falls = false;   // some difference strictly decreases

    auto test_pair = [&](double own_lo, double own_hi, const std::vector<double>& xs_lo,
                         const std::vector<double>& xs_hi) {
        double d_lo = utility(model, own_hi, xs_lo) - utility(model, own_lo, xs_lo);
        double d_hi = utility(model, own_hi, xs_hi) - utility(model, own_lo, xs_hi);
        ++report.cases_checked;
        if (d_hi > d_lo + tol) {
            rises = true;
            if (!report.increasing_witness)
                report.increasing_witness =
                    InteractionWitness{own_lo, own_hi, xs_lo, xs_hi, d_lo, d_hi};
        }
        if (d_hi < d_lo - tol) {
            falls = true;
            if (!report.decreasing_witness)
                report.decreasing_witness =
                    InteractionWitness{own_lo, own_hi, xs_lo, xs_hi, d_lo, d_hi};
        }
    };

    if (small_enough_for_exhaustive(degree, g)) {
        report.exhaustive = true;
        // All own-action pairs, all profile pairs obtained by raising one
        // coordinate; single-coordinate raises generate every coordinate-wise
        // comparison by transitivity of the accumulated flags.
        std::vector<std::size_t> pos(static_cast<std::size_t>(degree), 0);
        std::vector<double> xs_lo(static_cast<std::size_t>(degree));
        std::vector<double> xs_hi(static_cast<std::size_t>(degree));
        do {
            for (std::size_t j = 0; j < pos.size(); ++j) xs_lo[j] = action_grid[pos[j]];
            for (std::size_t j = 0; j < pos.size(); ++j) {
                for (std::size_t up = pos[j] + 1; up < g; ++up) {
                    xs_hi = xs_lo;
                    xs_hi[j] = action_grid[up];
                    for (std::size_t lo = 0; lo < g; ++lo)
                        for (std::size_t hi = lo + 1; hi < g; ++hi)
                            test_pair(action_grid[lo], action_grid[hi], xs_lo, xs_hi);
                }
            }
        } while (advance(pos, g));
    } else {
        Rng rng(derive_seed(seed, "interaction"));
        std::vector<double> xs_lo(static_cast<std::size_t>(degree));
        std::vector<double> xs_hi(static_cast<std::size_t>(degree));
        for (int s = 0; s < samples; ++s) {
            std::size_t lo = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(g) - 2));
            std::size_t hi = lo + 1 + static_cast<std::size_t>(rng.uniform_int(
                                         0, static_cast<std::int64_t>(g - lo) - 2));
            bool any_raise = false;
            for (std::size_t j = 0; j < xs_lo.size(); ++j) {
                std::size_t a = static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(g) - 1));
                std::size_t b = static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(g) - 1));
                if (a > b) std::swap(a, b);
                if (b > a) any_raise = true;
                xs_lo[j] = action_grid[a];
                xs_hi[j] = action_grid[b];
            }
            if (!any_raise) continue;
            test_pair(action_grid[lo], action_grid[hi], xs_lo, xs_hi);
        }
    }

    if (!rises && !falls)
        report.kind = InteractionKind::both;
    else if (!falls)
        report.kind = InteractionKind::complements;
    else if (!rises)
        report.kind = InteractionKind::substitutes;
    else
        report.kind = InteractionKind::neither;
    return report;
}

} // namespace secgame
