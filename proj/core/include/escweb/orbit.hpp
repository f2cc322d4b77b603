#pragma once

#include <optional>
#include <vector>

#include "escweb/map.hpp"
#include "escweb/rates.hpp"

namespace escweb {

inline constexpr int kDefaultBudget = 200;

enum class OutcomeClass { Violated, CertifiedMember, BudgetExhausted, RangeExceeded };

const char* outcome_name(OutcomeClass c);

enum class Certificate { RightHalfPlaneAbsorbing, LeftHalfPlaneAbsorbing };

const char* certificate_name(Certificate c);

// Result of comparing an orbit against a rate sequence.
//   Violated(n):        |f^n(z)| < a_n at exactly step n, all earlier steps passed.
//   CertifiedMember(n): all thresholds up to n passed and an absorbing
//                       certificate fired at n; membership holds for all later n.
//   BudgetExhausted(b): no decision within the budget.
//   RangeExceeded(n):   computing f^n would leave the binary64 range before any
//                       decision; never silently a member or a violation.
struct OrbitOutcome {
    OutcomeClass cls;
    int step;
    std::optional<Certificate> certificate;

    static OrbitOutcome violated(int n) { return {OutcomeClass::Violated, n, std::nullopt}; }
    static OrbitOutcome member(int n, std::optional<Certificate> c) {
        return {OutcomeClass::CertifiedMember, n, c};
    }
    static OrbitOutcome budget(int b) { return {OutcomeClass::BudgetExhausted, b, std::nullopt}; }
    static OrbitOutcome range(int n) { return {OutcomeClass::RangeExceeded, n, std::nullopt}; }
};

// Sound absorbing-certificate rules derived per map family and rate kind.
// A plan may be empty (no certificate obtainable for the pair); classification
// then never returns CertifiedMember.
struct CertificatePlan {
    // Fired when Re(w) >= max(right_cutoff, a_n) (right half-plane drift) or
    // -Re(w) >= max(left_cutoff, a_n) (left half-plane growth).
    std::optional<double> right_cutoff;
    std::optional<double> left_cutoff;
    // Exact ordinate membership test for 2*pi*j lines, Bergweiler-type maps
    // with geometric rates only (the imaginary part doubles on those lines).
    bool line_rule = false;

    static CertificatePlan for_pair(const ExpAffineMap& map, const RateSequence& rates);

    std::optional<Certificate> fires(const RateSequence& rates, complexd w, int n) const;
    bool line_fires(const RateSequence& rates, complexd z) const;
};

// Compares |f^n(z)| against rates.eval(n) for n = 1..budget with certified
// early exit. Deterministic for identical inputs.
OrbitOutcome classify_point(const ExpAffineMap& map, const RateSequence& rates, complexd z,
                            int budget = kDefaultBudget);

// Iterated maximum modulus thresholds t_n = M^n(R) starting from t_1 = M(R).
// Stops early once the next threshold would leave the binary64 range.
// Throws InvalidRadius when M(R) <= R.
std::vector<double> fast_escape_thresholds(const ExpAffineMap& map, double R, int budget);

// Membership test against the iterated-max-modulus rate (fast escape).
// While M^n(R) is representable the orbit is compared directly; beyond that a
// finite orbit value is a sound violation, and an orbit that leaves the range
// through the exponential-growth region counts as a certified member.
OrbitOutcome fast_escape_test(const ExpAffineMap& map, complexd z, double R,
                              int budget = kDefaultBudget);
OrbitOutcome fast_escape_test(const ExpAffineMap& map, complexd z,
                              const std::vector<double>& thresholds, int budget);

}
