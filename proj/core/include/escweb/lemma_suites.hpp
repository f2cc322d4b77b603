#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "escweb/geometry.hpp"
#include "escweb/map.hpp"
#include "escweb/orbit.hpp"
#include "escweb/rates.hpp"

namespace escweb {

// Membership verification over the absorbing sets: every sampled point must
// come back CertifiedMember within the budget.
struct Lemma31Row {
    complexd z;
    int set_family;
    OrbitOutcome outcome;
};

struct Lemma31Report {
    ExpAffineMap map;
    RateSequence rates;
    int samples_per_set;
    std::uint64_t seed;
    std::vector<Lemma31Row> rows;
    int certified = 0;
    int other = 0;
    bool all_certified = false;
};

Lemma31Report verify_lemma31(const ExpAffineMap& map, const RateSequence& rates,
                             int samples_per_set, int budget, std::uint64_t seed);

// Two-sided modulus bounds in the dominant-term cones:
//   fatou-type:      x in [-700,-3], |y| <= sqrt(3)|x|: e^{-x}/2 <= |f(z)| <= 2 e^{-x}
//   bergweiler-type: x in [4,700],   |y| <= sqrt(3) x:  e^{x}/2  <= |g(z)| <= 2 e^{x}
struct ModulusBoundsReport {
    ExpAffineMap map;
    long long samples;
    std::uint64_t seed;
    long long violations = 0;
    double worst_low_ratio = 0.0;   // min over samples of |f| / lower bound
    double worst_high_ratio = 0.0;  // max over samples of |f| / upper bound
    bool pass = false;
};

ModulusBoundsReport verify_modulus_bounds(const ExpAffineMap& map, long long samples,
                                          std::uint64_t seed);

// Coverage dichotomy at level k: away from the seam lines, a point outside the
// closed rectangle R_{k+1} lies in the absorbing half-plane or in exactly one
// half-strip S_{k+1,j}, never both.
struct StripCoverageReport {
    Family family;
    int k;
    int m;
    long long samples;
    std::uint64_t seed;
    long long tested = 0;
    long long skipped_on_seam = 0;
    long long violations = 0;
    bool pass = false;
};

StripCoverageReport strip_coverage_check(Family family, int k, int m, long long samples,
                                         std::uint64_t seed);

std::string to_json_string(const Lemma31Report& r);
std::string to_json_string(const ModulusBoundsReport& r);
std::string to_json_string(const StripCoverageReport& r);

}
