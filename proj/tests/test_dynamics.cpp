#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "escweb/checks.hpp"
#include "escweb/errors.hpp"
#include "escweb/map.hpp"
#include "escweb/maxmod.hpp"
#include "escweb/orbit.hpp"
#include "escweb/rates.hpp"
#include "oracles.hpp"

using namespace escweb;

TEST_CASE("map construction and family classification") {
    CHECK_THROWS_AS(ExpAffineMap(1, 1, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(ExpAffineMap(1, 1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(ExpAffineMap(std::nan(""), 1, 1, -1), std::invalid_argument);

    CHECK(ExpAffineMap::fatou().family() == Family::FatouType);
    CHECK(ExpAffineMap::bergweiler().family() == Family::BergweilerType);
    CHECK(ExpAffineMap(1, 1, 1, 1).family() == Family::Other);    // b*d > 0
    CHECK(ExpAffineMap(0.5, 1, 1, -1).family() == Family::Other); // a < 1
    CHECK(ExpAffineMap(1, 0.25, 2, -3).family() == Family::FatouType);
    CHECK(ExpAffineMap(1.5, -7, -2, 0.5).family() == Family::BergweilerType);

    CHECK(ExpAffineMap::fatou().label() == "f(z) = 1*z + 1 + 1*exp(-1*z)");
    CHECK(std::string(family_name(Family::FatouType)) == "fatou-type");
    CHECK(std::string(family_name(Family::BergweilerType)) == "bergweiler-type");
}

TEST_CASE("fixed points and multipliers of the canonical maps") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const complexd pi_i(0.0, kPi);
    CHECK(std::abs(evaluate(f, pi_i) - pi_i) < 1e-12);
    CHECK(std::abs(evaluate(f, -pi_i) + pi_i) < 1e-12);
    CHECK(std::abs(derivative(f, pi_i) - complexd(2.0, 0.0)) < 1e-12);

    const ExpAffineMap g = ExpAffineMap::bergweiler();
    const complexd p(std::log(2.0), 0.0);
    CHECK(std::abs(evaluate(g, p) - p) < 1e-14);
    CHECK(std::abs(derivative(g, p)) <= 1e-14);  // superattracting
}

TEST_CASE("evaluate matches the defining expression and overflow policy") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-20, 20), uy(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        complexd z(ux(rng), uy(rng));
        complexd expect = f.a * z + f.b + f.c * std::exp(f.d * z);
        CHECK(evaluate(f, z) == expect);  // bit-identical
    }
    CHECK(derivative(f, complexd(0, 0)) == complexd(0.0, 0.0));  // 1 - e^0

    CHECK(!evaluation_overflows(f, complexd(-709.0, 0)));
    CHECK(evaluation_overflows(f, complexd(-709.5, 0)));
    CHECK_THROWS_AS(evaluate(f, complexd(-710.0, 0)), OverflowError);
    CHECK_NOTHROW(evaluate(f, complexd(708.0, 3.0)));
}

TEST_CASE("rate sequences") {
    CHECK_THROWS_AS(RateSequence::arithmetic(-1), std::invalid_argument);
    const RateSequence ar = RateSequence::arithmetic(6);
    CHECK(ar.eval(1) == 3.5);
    CHECK(ar.eval(0) == 3.0);
    CHECK_THROWS_AS(ar.eval(-1), std::invalid_argument);

    const RateSequence ge = RateSequence::geometric(0);
    CHECK(ge.eval(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(ge.eval(50) == 33554432.0);  // 2^25 exactly

    // strictly increasing in n, nondecreasing in m
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 40; ++n) {
            CHECK(RateSequence::arithmetic(m).eval(n + 1) > RateSequence::arithmetic(m).eval(n));
            CHECK(RateSequence::geometric(m + 1).eval(n) >= RateSequence::geometric(m).eval(n));
        }
    CHECK(std::string(rate_kind_name(RateKind::Geometric)) == "geometric");
}

TEST_CASE("drift inequalities behind the absorbing certificates") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(1.0, 600.0), uy(-1e4, 1e4);
    for (int i = 0; i < 100000; ++i) {
        complexd z(ux(rng), uy(rng));
        CHECK(evaluate(f, z).real() >= z.real() + 0.5);
    }

    // Bergweiler left drift: for x <= -6, Re g(z) <= 2x + 3 - log 2 <= sqrt(2) x.
    const ExpAffineMap g = ExpAffineMap::bergweiler();
    std::uniform_real_distribution<double> vx(-600.0, -6.0);
    for (int i = 0; i < 100000; ++i) {
        complexd z(vx(rng), uy(rng));
        double re = evaluate(g, z).real();
        CHECK(re <= 2 * z.real() + 3 - std::log(2.0));
        CHECK(re <= std::sqrt(2.0) * z.real());
    }
}

TEST_CASE("classify_point spec examples") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const RateSequence ar6 = RateSequence::arithmetic(6);

    OrbitOutcome o = classify_point(f, ar6, complexd(0, kPi), 100);
    CHECK(o.cls == OutcomeClass::Violated);
    CHECK(o.step == 1);  // |f(pi i)| = pi < 7/2

    o = classify_point(f, ar6, complexd(6, 0), 100);
    CHECK(o.cls == OutcomeClass::CertifiedMember);
    CHECK(o.certificate == Certificate::RightHalfPlaneAbsorbing);

    o = classify_point(f, ar6, complexd(0, 12 * kPi), 100);
    CHECK(o.cls == OutcomeClass::CertifiedMember);

    const ExpAffineMap g = ExpAffineMap::bergweiler();
    o = classify_point(g, RateSequence::geometric(0), complexd(-16, 0), 100);
    CHECK(o.cls == OutcomeClass::CertifiedMember);
    CHECK(o.certificate == Certificate::LeftHalfPlaneAbsorbing);

    // Bergweiler line rule: exact ordinate 2*pi*j with |j| >= 2^m certifies
    // immediately and without a half-plane certificate.
    o = classify_point(g, RateSequence::geometric(0), complexd(4, kTwoPi), 100);
    CHECK(o.cls == OutcomeClass::CertifiedMember);
    CHECK(o.step == 0);
    CHECK(!o.certificate.has_value());

    // Budget exhaustion: the Fatou fixed point survives three arithmetic
    // thresholds at m = 0 without any certificate firing.
    o = classify_point(f, RateSequence::arithmetic(0), complexd(0, kPi), 3);
    CHECK(o.cls == OutcomeClass::BudgetExhausted);
    CHECK(o.step == 3);

    // Left escape overflows without a Fatou certificate.
    o = classify_point(f, ar6, complexd(-700, kPi), 200);
    CHECK(o.cls == OutcomeClass::RangeExceeded);
}

TEST_CASE("monotonicity in m of certified membership") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(-8, 8), uy(-40, 40);
    int certified = 0;
    for (int i = 0; i < 4000; ++i) {
        complexd z(ux(rng), uy(rng));
        OrbitOutcome hi = classify_point(f, RateSequence::arithmetic(6), z, 200);
        if (hi.cls != OutcomeClass::CertifiedMember) continue;
        ++certified;
        for (int mp : {0, 1, 3}) {
            OrbitOutcome lo = classify_point(f, RateSequence::arithmetic(mp), z, 200);
            CHECK(lo.cls != OutcomeClass::Violated);
        }
    }
    CHECK(certified > 100);  // the property was actually exercised
}

TEST_CASE("classification agrees with the brute-force oracle") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const ExpAffineMap g = ExpAffineMap::bergweiler();
    const RateSequence ar6 = RateSequence::arithmetic(6);
    const RateSequence ge0 = RateSequence::geometric(0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ux(-8, 8), uy(-40, 40);
    for (int i = 0; i < 2000; ++i) {
        complexd z(ux(rng), uy(rng));
        CHECK(oracle::agrees(classify_point(f, ar6, z, 200), oracle::brute_orbit(f, ar6, z, 200)));
        CHECK(oracle::agrees(classify_point(g, ge0, z, 200), oracle::brute_orbit(g, ge0, z, 200)));
    }
}

TEST_CASE("max_modulus estimates") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    MaxModEstimate e1 = max_modulus(f, 1.0);
    CHECK(e1.value >= std::exp(1.0));
    CHECK(e1.value == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(e1.theta == doctest::Approx(kPi).epsilon(1e-6));

    CHECK(max_modulus(f, 3.0).value >= std::exp(3.0) - 2.0);
    const ExpAffineMap g = ExpAffineMap::bergweiler();
    CHECK(max_modulus(g, 1.0).value >= std::abs(4.0 - std::log(2.0) - std::exp(1.0)));

    // never below the two real-axis evaluations; monotone in samples
    for (double r : {0.5, 2.0, 5.5}) {
        MaxModEstimate e = max_modulus(f, r);
        CHECK(e.value >= std::abs(evaluate(f, complexd(r, 0))));
        CHECK(e.value >= std::abs(evaluate(f, complexd(-r, 0))));
        CHECK(max_modulus(f, r, 8192).value >= max_modulus(f, r, 4096).value * (1 - 1e-12));
    }

    CHECK_THROWS_AS(max_modulus(f, -1.0), InvalidRadius);
    CHECK_THROWS_AS(max_modulus(f, 800.0), OverflowError);
    CHECK_THROWS_AS(max_modulus(f, 1.0, 2), std::invalid_argument);
}

TEST_CASE("fast escape against iterated max-modulus thresholds") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    std::vector<double> t = fast_escape_thresholds(f, 5.0, 50);
    REQUIRE(t.size() >= 2);
    CHECK(t[0] == max_modulus(f, 5.0).value);
    for (size_t i = 0; i + 1 < t.size(); ++i) {
        CHECK(t[i + 1] == max_modulus(f, t[i]).value);  // definitional identity
        CHECK(t[i + 1] > t[i]);
    }

    // Right half-plane points escape too slowly for the iterated-max-modulus
    // rate: |f(20)| = 21 + e^-20 < M(5) = e^5 - 4, a genuine violation.
    OrbitOutcome slow = fast_escape_test(f, complexd(20, 0), 5.0, 100);
    CHECK(slow.cls == OutcomeClass::Violated);
    CHECK(slow.step == 1);

    OrbitOutcome v = fast_escape_test(f, complexd(0, kPi), 5.0, 100);
    CHECK(v.cls == OutcomeClass::Violated);
    CHECK(v.step == 1);

    // A bouquet-hair point leaps left by e^{-x} each step and leaves the
    // binary64 range inside the exponential-growth region.
    OrbitOutcome hair = fast_escape_test(f, complexd(-6, kPi), 5.0, 100);
    CHECK(hair.cls == OutcomeClass::CertifiedMember);
    CHECK(hair.certificate == Certificate::LeftHalfPlaneAbsorbing);

    // z = 0: whatever happens must match the direct orbit/threshold comparison
    // on the finite prefix.
    OrbitOutcome o = fast_escape_test(f, complexd(0, 0), 5.0, 100);
    complexd w(0, 0);
    bool decided = false;
    for (size_t n = 0; n < t.size() && !decided; ++n) {
        w = f.a * w + f.b + f.c * std::exp(f.d * w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) break;
        if (std::abs(w) < t[n]) {
            CHECK(o.cls == OutcomeClass::Violated);
            CHECK(o.step == static_cast<int>(n) + 1);
            decided = true;
        }
    }

    // A contracting map admits no radius with M(R) > R near R = 1.
    const ExpAffineMap tiny(0.5, 0.0, 0.001, 0.0001);
    CHECK_THROWS_AS(fast_escape_thresholds(tiny, 1.0, 10), InvalidRadius);
}

TEST_CASE("rate domination and cycle hypothesis checks") {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const ExpAffineMap g = ExpAffineMap::bergweiler();

    RateDominationReport rd = rate_domination_check(f, RateSequence::arithmetic(6), 50);
    CHECK(rd.all_pass);
    CHECK(rd.rows.size() == 50);
    rd = rate_domination_check(g, RateSequence::geometric(0), 50);
    CHECK(rd.all_pass);
    CHECK(std::isinf(rd.rows.back().max_modulus_at_a_n));  // past the exp range

    rd = rate_domination_check(f, RateSequence::arithmetic(6), 1);
    CHECK(rd.rows.size() == 1);
    CHECK(rd.rows[0].pass);

    CycleCheckReport cy = cycle_in_disc_check(f, RateSequence::arithmetic(6));
    CHECK(cy.all_pass);
    CHECK(cy.rows.size() == 2);  // +/- pi i
    for (const auto& row : cy.rows) {
        CHECK(row.residual < 1e-12);
        CHECK(row.modulus == doctest::Approx(kPi));
        CHECK(row.bound == 3.5);
    }

    cy = cycle_in_disc_check(f, RateSequence::arithmetic(5));
    CHECK(!cy.all_pass);  // pi > 3 = a_1
    CHECK(!cy.note.empty());

    cy = cycle_in_disc_check(g, RateSequence::geometric(0));
    CHECK(cy.all_pass);
    CHECK(cy.rows.size() == 1);
    CHECK(cy.rows[0].multiplier_abs <= 1e-14);

    CHECK_THROWS_AS(cycle_in_disc_check(ExpAffineMap(1, 2, 1, -1), RateSequence::arithmetic(1)),
                    UnsupportedMapError);
}
