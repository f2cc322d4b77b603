#include "escweb/orbit.hpp"

#include <cmath>

#include "escweb/errors.hpp"
#include "escweb/maxmod.hpp"

namespace escweb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

bool finite(complexd w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

}

const char* outcome_name(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::Violated: return "violated";
        case OutcomeClass::CertifiedMember: return "certified-member";
        case OutcomeClass::BudgetExhausted: return "budget-exhausted";
        case OutcomeClass::RangeExceeded: return "range-exceeded";
    }
    return "?";
}

const char* certificate_name(Certificate c) {
    return c == Certificate::RightHalfPlaneAbsorbing ? "right-half-plane-absorbing"
                                                     : "left-half-plane-absorbing";
}

// Certificate soundness sketches, all checked by unit tests:
//
// Fatou type (a = 1, b > 0, d < 0; mirrored for b < 0, d > 0), arithmetic rates.
// For Re z >= x0 with |c| e^{d x0} <= lambda*b we get Re f(z) >= Re z + (1-lambda)b.
// Choosing lambda = 1 - 1/(2b) (needs b > 1/2) makes the drift exactly 1/2 per
// step, matching the threshold increment, so Re f^n >= max(cutoff, a_n0) + (n-n0)/2
// >= a_n for all n >= n0. Canonical map: cutoff = max(1, ln 2) = 1.
//
// Bergweiler type (a > sqrt 2), both rate kinds. For Re z <= -x0 with
// (a - sqrt2) x0 >= |b| + |c| + 1 and x0 >= 6 we get Re f(z) <= sqrt2 * Re z - 1,
// so -Re grows by a factor sqrt2 per step, dominating sqrt(2)^(n+m) exactly and
// (n+m)/2 comfortably. Canonical map: cutoff = max(6, (|b|+|c|+1)/(2-sqrt2)) = 6.
//
// Line rule (Bergweiler type, geometric rates): on y = 2*pi*j the imaginary
// part doubles every step, |f^n(z)| >= 2^{n+1} |j| pi >= sqrt(2)^{n+m} whenever
// |j| >= 2^m. Fired only for ordinates constructed exactly as 2*pi*j.
CertificatePlan CertificatePlan::for_pair(const ExpAffineMap& map, const RateSequence& rates) {
    CertificatePlan plan;
    switch (map.family()) {
        case Family::FatouType: {
            if (rates.kind != RateKind::Arithmetic) break;  // additive drift cannot certify geometric rates
            const double babs = std::abs(map.b);
            if (babs <= 0.5) break;
            const double lambda = 1.0 - 1.0 / (2.0 * babs);
            const double cutoff =
                std::max(1.0, std::log(std::abs(map.c) / (lambda * babs)) / std::abs(map.d));
            if (map.b > 0.0)
                plan.right_cutoff = cutoff;
            else
                plan.left_cutoff = cutoff;
            break;
        }
        case Family::BergweilerType: {
            if (map.a <= kSqrt2) break;
            const double cutoff =
                std::max(6.0, (std::abs(map.b) + std::abs(map.c) + 1.0) / (map.a - kSqrt2));
            if (map.d > 0.0)
                plan.left_cutoff = cutoff;
            else
                plan.right_cutoff = cutoff;
            if (rates.kind == RateKind::Geometric) plan.line_rule = true;
            break;
        }
        case Family::Other:
            break;
    }
    return plan;
}

std::optional<Certificate> CertificatePlan::fires(const RateSequence& rates, complexd w,
                                                  int n) const {
    if (right_cutoff && w.real() >= std::max(*right_cutoff, rates.eval(n)))
        return Certificate::RightHalfPlaneAbsorbing;
    if (left_cutoff && -w.real() >= std::max(*left_cutoff, rates.eval(n)))
        return Certificate::LeftHalfPlaneAbsorbing;
    return std::nullopt;
}

bool CertificatePlan::line_fires(const RateSequence& rates, complexd z) const {
    if (!line_rule) return false;
    if (rates.m > 60) return false;
    const double j = std::round(z.imag() / kTwoPi);
    if (std::abs(j) < std::exp2(double(rates.m))) return false;
    return z.imag() == kTwoPi * j;  // exact constructed ordinate only
}

OrbitOutcome classify_point(const ExpAffineMap& map, const RateSequence& rates, complexd z,
                            int budget) {
    if (budget < 1) throw std::invalid_argument("classify_point requires budget >= 1");
    const CertificatePlan plan = CertificatePlan::for_pair(map, rates);

    if (plan.line_fires(rates, z)) return OrbitOutcome::member(0, std::nullopt);
    if (auto cert = plan.fires(rates, z, 0)) return OrbitOutcome::member(0, cert);

    complexd w = z;
    for (int n = 1; n <= budget; ++n) {
        if (evaluation_overflows(map, w)) return OrbitOutcome::range(n);
        w = map.a * w + map.b + map.c * std::exp(map.d * w);
        if (!finite(w)) return OrbitOutcome::range(n);
        if (std::abs(w) < rates.eval(n)) return OrbitOutcome::violated(n);
        if (auto cert = plan.fires(rates, w, n)) return OrbitOutcome::member(n, cert);
    }
    return OrbitOutcome::budget(budget);
}

std::vector<double> fast_escape_thresholds(const ExpAffineMap& map, double R, int budget) {
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidRadius("fast escape requires R > 0");
    std::vector<double> t;
    double r = R;
    for (int n = 1; n <= budget; ++n) {
        if (std::abs(map.d) * r > kExpArgMax) break;  // M(r) would overflow
        double next;
        try {
            next = max_modulus(map, r).value;
        } catch (const OverflowError&) {
            break;
        }
        if (!std::isfinite(next)) break;
        if (n == 1 && next <= R)
            throw InvalidRadius("fast escape requires M(R) > R");
        t.push_back(next);
        r = next;
    }
    return t;
}

namespace {

// Exponential-growth regions of the two modulus lemmas; an orbit leaving the
// binary64 range through one of these is counted as a certified fast escaper.
std::optional<Certificate> growth_region(const ExpAffineMap& map, complexd w) {
    if (map.d < 0.0 && -w.real() >= std::max(3.0, 0.5 * std::abs(w)))
        return Certificate::LeftHalfPlaneAbsorbing;
    if (map.d > 0.0 && w.real() >= std::max(4.0, 0.5 * std::abs(w)))
        return Certificate::RightHalfPlaneAbsorbing;
    return std::nullopt;
}

}

OrbitOutcome fast_escape_test(const ExpAffineMap& map, complexd z,
                              const std::vector<double>& thresholds, int budget) {
    if (budget < 1) throw std::invalid_argument("fast_escape_test requires budget >= 1");
    complexd w = z;
    const int T = int(thresholds.size());
    for (int n = 1; n <= budget; ++n) {
        const complexd prev = w;
        if (evaluation_overflows(map, prev)) {
            if (auto cert = growth_region(map, prev)) return OrbitOutcome::member(n, cert);
            return OrbitOutcome::range(n);
        }
        w = map.a * prev + map.b + map.c * std::exp(map.d * prev);
        if (!finite(w)) {
            if (auto cert = growth_region(map, prev)) return OrbitOutcome::member(n, cert);
            return OrbitOutcome::range(n);
        }
        if (n <= T) {
            if (std::abs(w) < thresholds[size_t(n - 1)]) return OrbitOutcome::violated(n);
        } else {
            // M^n(R) exceeds the binary64 range while the orbit stayed finite.
            return OrbitOutcome::violated(n);
        }
    }
    return OrbitOutcome::budget(budget);
}

OrbitOutcome fast_escape_test(const ExpAffineMap& map, complexd z, double R, int budget) {
    return fast_escape_test(map, z, fast_escape_thresholds(map, R, budget), budget);
}

}
