#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "secgame/payoff.hpp"
#include "secgame/rng.hpp"

using namespace secgame;

namespace {

const std::vector<double> kGrid5 = {0.0, 0.25, 0.5, 0.75, 1.0};

}

TEST_CASE("model validation rejects out-of-family parameters") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.3);
    CHECK_NOTHROW(validate(m));
    m.alpha = 0.0;
    CHECK_THROWS_AS(validate(m), std::invalid_argument);
    m.alpha = 1.5;
    CHECK_THROWS_AS(validate(m), std::invalid_argument);
    // The factories validate on construction too.
    CHECK_THROWS_AS(PayoffModel::sum(BenefitFamily::power, 1.0, -0.1, CostFamily::linear, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::linear, -0.2),
                    std::invalid_argument);
    // The step benefit belongs to the binary game only.
    CHECK_THROWS_AS(PayoffModel::sum(BenefitFamily::step, 1.0, 1.0, CostFamily::linear, 0.3),
                    std::invalid_argument);
}

TEST_CASE("binary-game factory pins the reduction") {
    PayoffModel m = PayoffModel::best_shot(0.3);
    CHECK(m.kind == GameKind::best_shot);
    CHECK(m.benefit == BenefitFamily::step);
    CHECK(m.lambda == doctest::Approx(1.0));
    CHECK(m.cost == CostFamily::linear);
    CHECK_NOTHROW(validate(m));
}

TEST_CASE("utility: linear benefit with spillover, frozen arithmetic") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::quadratic, 1.0);
    // Oracle recomputed inline: z = 0.5 + 0.5*0.4 = 0.7, cost = 0.5^2 = 0.25.
    double oracle = (0.5 + 0.5 * 0.4) - 0.5 * 0.5;
    CHECK(oracle == doctest::Approx(0.45));
    CHECK(utility(m, 0.5, {0.4}) == doctest::Approx(0.45));
}

TEST_CASE("utility: binary game basics") {
    PayoffModel m = PayoffModel::best_shot(0.3);
    CHECK(utility(m, 0.0, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(utility(m, 0.0, {0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(utility(m, 1.0, {0.0, 0.0}) == doctest::Approx(1.0 - 0.3));
    // Free riding beats investing when someone else already protects.
    CHECK(utility(m, 0.0, {1.0}) > utility(m, 1.0, {1.0}));
    CHECK_THROWS_AS(utility(m, 0.5, {0.0}), std::invalid_argument);
}

TEST_CASE("utility validates action ranges") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 1.0, 1.0, CostFamily::linear, 0.1);
    CHECK_THROWS_AS(utility(m, -0.1, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(utility(m, 0.5, {1.2}), std::invalid_argument);
}

TEST_CASE("zero-neighbor drop identity holds bitwise for every family") {
    std::vector<PayoffModel> models = {
        PayoffModel::sum(BenefitFamily::linear_saturating, 1.0, 0.7, CostFamily::linear, 0.2),
        PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::quadratic, 0.4),
        PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.3, CostFamily::linear, 0.1),
        PayoffModel::best_shot(0.25),
    };
    Rng rng(77);
    for (const PayoffModel& m : models) {
        for (int trial = 0; trial < 50; ++trial) {
            int d = rng.uniform_int(0, 3);
            std::vector<double> xs;
            for (int j = 0; j < d; ++j) {
                double a = rng.uniform01();
                if (m.kind == GameKind::best_shot) a = a < 0.5 ? 0.0 : 1.0;
                xs.push_back(a);
            }
            double own = m.kind == GameKind::best_shot
                             ? (rng.uniform01() < 0.5 ? 0.0 : 1.0)
                             : rng.uniform01();
            double before = utility(m, own, xs);
            xs.push_back(0.0);
            double after = utility(m, own, xs);
            CHECK(before == after);   // exact, not approximate
        }
    }
}

TEST_CASE("utility is symmetric in neighbor order") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.5, 0.8, CostFamily::quadratic, 0.3);
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> xs = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
        double own = rng.uniform01();
        double base = utility(m, own, xs);
        std::vector<double> perm = {xs[2], xs[0], xs[1]};
        CHECK(utility(m, own, perm) == doctest::Approx(base).epsilon(1e-15));
    }
}

TEST_CASE("lambda zero makes neighbors irrelevant") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.0, CostFamily::linear, 0.2);
    for (double x : kGrid5) {
        double solo = utility(m, x, {});
        CHECK(utility(m, x, {1.0, 1.0}) == doctest::Approx(solo));
        CHECK(utility(m, x, {0.0, 0.5, 1.0}) == doctest::Approx(solo));
    }
}

TEST_CASE("benefit families are non-decreasing over the reachable range") {
    std::vector<PayoffModel> models = {
        PayoffModel::sum(BenefitFamily::linear_saturating, 1.0, 1.0, CostFamily::linear, 0.1),
        PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.1),
        PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 1.0, CostFamily::linear, 0.1),
        PayoffModel::best_shot(0.1),
    };
    for (const PayoffModel& m : models) {
        double max_z = 1.0 + m.lambda * 4.0;
        double prev = benefit_value(m, 0.0);
        CHECK(prev >= 0.0);
        for (int i = 1; i <= 200; ++i) {
            double z = max_z * i / 200.0;
            double cur = benefit_value(m, z);
            CHECK(cur >= prev - 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("externality check passes every shipped family, exhaustively") {
    for (const PayoffModel& m :
         {PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::quadratic, 0.4),
          PayoffModel::sum(BenefitFamily::linear_saturating, 1.0, 0.4, CostFamily::linear, 0.2),
          PayoffModel::sum(BenefitFamily::log2_shifted, 1.0, 0.7, CostFamily::quadratic, 0.3),
          PayoffModel::best_shot(0.3)}) {
        std::vector<double> grid =
            m.kind == GameKind::best_shot ? std::vector<double>{0.0, 1.0} : kGrid5;
        ExternalityReport rep = check_positive_externality(m, 2, grid);
        CHECK(rep.holds);
        CHECK(rep.exhaustive);
        CHECK(rep.cases_checked > 0);
        CHECK_FALSE(rep.violation.has_value());
    }

    // A model the validator refuses is rejected up front rather than scanned.
    PayoffModel bad = PayoffModel::sum(BenefitFamily::power, 1.0, 1.0, CostFamily::linear, 0.1);
    bad.lambda = -1.0;
    CHECK_THROWS_AS(check_positive_externality(bad, 1, kGrid5), std::invalid_argument);
}

TEST_CASE("interaction classification: separable, concave, binary") {
    // Linear benefit: differences never depend on neighbors.
    PayoffModel sep = PayoffModel::sum(BenefitFamily::power, 1.0, 0.5, CostFamily::quadratic, 0.6);
    CHECK(classify_strategic_interaction(sep, 2, kGrid5).kind == InteractionKind::both);

    // Strictly concave benefit: own and neighbor investment substitute.
    PayoffModel conc = PayoffModel::sum(BenefitFamily::power, 0.5, 1.0, CostFamily::linear, 0.2);
    InteractionReport rep = classify_strategic_interaction(conc, 1, kGrid5);
    CHECK(rep.kind == InteractionKind::substitutes);
    CHECK(rep.exhaustive);
    CHECK(rep.decreasing_witness.has_value());

    // Binary protection game: one protected neighbor removes the incentive.
    PayoffModel bs = PayoffModel::best_shot(0.3);
    CHECK(classify_strategic_interaction(bs, 2, {0.0, 1.0}).kind ==
          InteractionKind::substitutes);
}

TEST_CASE("interaction classification: saturating benefit never shows rising differences") {
    // min(z,1) is concave, so the own-action difference can only flatten as
    // neighbors invest more; the classifier must not report complements.
    PayoffModel m =
        PayoffModel::sum(BenefitFamily::linear_saturating, 1.0, 0.2, CostFamily::quadratic, 0.5);
    InteractionReport rep = classify_strategic_interaction(m, 2, kGrid5);
    CHECK((rep.kind == InteractionKind::substitutes || rep.kind == InteractionKind::both));
    CHECK_FALSE(rep.increasing_witness.has_value());
}

TEST_CASE("equal degree and equal inputs give equal outputs") {
    PayoffModel m = PayoffModel::sum(BenefitFamily::power, 0.7, 0.9, CostFamily::quadratic, 0.35);
    std::vector<double> xs = {0.25, 0.75};
    CHECK(utility(m, 0.5, xs) == utility(m, 0.5, xs));
}
