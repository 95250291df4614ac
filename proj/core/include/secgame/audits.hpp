#ifndef SECGAME_AUDITS_HPP
#define SECGAME_AUDITS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "secgame/instances.hpp"

namespace secgame {

struct AuditRow {
    std::string subject;
    bool pass = false;
    std::string detail;
};

struct AuditOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<AuditRow> rows;
    double elapsed_seconds = 0.0;
};

/// Interaction-transfer audit: across randomized cases whose hypotheses
/// (zero-neighbor identity, exhaustive interaction classification,
/// randomized-function association verdict, monotone profile) all hold,
/// expected-utility differences must move with degree in the direction the
/// interaction class dictates. Requires at least `min_eligible` cases to
/// survive the hypothesis screen and zero counterexamples, tolerance `tol`.
AuditOutcome audit_degree_interaction_transfer(int case_count = 60,
                                               std::uint64_t seed = 20240801,
                                               double tol = 1e-10, int min_eligible = 50);

/// Existence-and-direction audit over the reference suite: every instance
/// must yield a converged symmetric equilibrium (residual <= epsilon) from
/// one of the standard starts, with the action profile monotone in the
/// direction the instance's interaction class leans.
AuditOutcome audit_equilibrium_existence_direction(double epsilon = 1e-9);

/// Exhaustive-enumeration audit on binary-action games with independent
/// degree beliefs (max degree <= 3, 11 mixing levels): every symmetric
/// equilibrium found must be monotone in degree, and the non-constant ones
/// must all lean the same way. The observed direction is recorded in the
/// outcome detail.
AuditOutcome audit_enumeration_monotonicity(double epsilon = 1e-9);

/// Equilibrium payoff-ordering audit: where the association verdict and the
/// equilibrium action direction match as hypotheses require, equilibrium
/// expected utility must be non-decreasing in degree. Mismatches are skips.
AuditOutcome audit_payoff_ordering(double tol = 1e-9);

/// Effort/payoff headline audit: in the substitutes instances of the
/// reference suite, equilibrium actions fall (weakly) with degree while
/// equilibrium expected utility rises (weakly), under positive, negative,
/// and independent association alike.
AuditOutcome audit_effort_payoff_headline(double tol = 1e-9);

std::vector<AuditOutcome> run_all_audits(std::uint64_t seed = 20240801);

} // namespace secgame

#endif
