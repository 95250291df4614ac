#include <doctest.h>

#include <set>
#include <string>

#include "secgame/audits.hpp"
#include "secgame/instances.hpp"

using namespace secgame;

TEST_CASE("belief family builder produces strictly ordered rows") {
    NeighborBeliefs up = fosd_family({1, 2, 3}, 3, 0.8, true);
    NeighborBeliefs down = fosd_family({1, 2, 3}, 3, 0.8, false);
    for (int d = 1; d <= 2; ++d) {
        CHECK(fosd_direction(up.row(d), up.row(d + 1)) == 1);
        CHECK(fosd_direction(down.row(d), down.row(d + 1)) == -1);
    }
    NeighborBeliefs flat = independent_uniform(3);
    for (int d : flat.own_degrees())
        for (int k = 1; k <= 3; ++k)
            CHECK(flat.row(d)[static_cast<std::size_t>(k)] == doctest::Approx(1.0 / 3));
}

TEST_CASE("reference suite covers both games across three association families") {
    std::vector<Instance> suite = solver_suite();
    REQUIRE(suite.size() == 6);
    std::set<std::string> names;
    for (const Instance& inst : suite) names.insert(inst.name);
    for (const char* expected :
         {"substitutes-positive", "substitutes-negative", "substitutes-independent",
          "separable-positive", "separable-negative", "separable-independent"})
        CHECK(names.count(expected) == 1);
    for (const Instance& inst : suite) {
        CHECK(inst.degrees == std::vector<int>{1, 2, 3});
        CHECK_NOTHROW(validate(inst.model));
    }
}

TEST_CASE("audit-case generator is deterministic and hypothesis-consistent") {
    std::vector<AuditCase> a = degree_interaction_suite(10, 99);
    std::vector<AuditCase> b = degree_interaction_suite(10, 99);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].instance.name == b[i].instance.name);
        CHECK(a[i].complements_side == b[i].complements_side);
        Monotonicity dir = classify_profile_monotonicity(a[i].profile);
        if (a[i].complements_side)
            CHECK((dir == Monotonicity::non_decreasing || dir == Monotonicity::constant));
        else
            CHECK((dir == Monotonicity::non_increasing || dir == Monotonicity::constant));
    }
}

TEST_CASE("interaction-transfer audit finds no counterexamples") {
    AuditOutcome audit = audit_degree_interaction_transfer(60, 20240801, 1e-10, 50);
    INFO(audit.detail);
    CHECK(audit.pass);
    int eligible = 0;
    for (const AuditRow& row : audit.rows) {
        CHECK(row.pass);
        if (row.detail.find("screened out") == std::string::npos) ++eligible;
    }
    CHECK(eligible >= 50);
}

TEST_CASE("existence-and-direction audit passes on the reference suite") {
    AuditOutcome audit = audit_equilibrium_existence_direction();
    INFO(audit.detail);
    CHECK(audit.pass);
    CHECK(audit.rows.size() == 6);
    for (const AuditRow& row : audit.rows) {
        INFO(row.subject << ": " << row.detail);
        CHECK(row.pass);
    }
}

TEST_CASE("enumeration audit: all equilibria monotone, one consistent direction") {
    AuditOutcome audit = audit_enumeration_monotonicity();
    INFO(audit.detail);
    CHECK(audit.pass);
    // The recorded direction must be reported in the detail line.
    CHECK(audit.detail.find("non-increasing") != std::string::npos);
}

TEST_CASE("payoff-ordering audit holds wherever its hypotheses apply") {
    AuditOutcome audit = audit_payoff_ordering();
    INFO(audit.detail);
    CHECK(audit.pass);
    for (const AuditRow& row : audit.rows) {
        INFO(row.subject << ": " << row.detail);
        CHECK(row.pass);
    }
}

TEST_CASE("headline audit: effort falls, payoff rises, all association families") {
    AuditOutcome audit = audit_effort_payoff_headline();
    INFO(audit.detail);
    CHECK(audit.pass);
    CHECK(audit.rows.size() == 3);   // substitutes x three belief families
}

TEST_CASE("the full audit battery reports five named audits") {
    std::vector<AuditOutcome> all = run_all_audits();
    REQUIRE(all.size() == 5);
    for (const AuditOutcome& audit : all) {
        INFO(audit.name << ": " << audit.detail);
        CHECK(audit.pass);
        CHECK(audit.elapsed_seconds >= 0.0);
    }
}
