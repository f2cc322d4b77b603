#pragma once

#include <string>
#include <vector>

#include "escweb/map.hpp"
#include "escweb/maxmod.hpp"
#include "escweb/rates.hpp"

namespace escweb {

// One row of the admissibility check a_{n+1} <= M(a_n, f).
struct RateDominationRow {
    int n;
    double a_n;
    double a_next;
    double max_modulus_at_a_n;
    bool pass;
};

struct RateDominationReport {
    std::vector<RateDominationRow> rows;
    bool all_pass = true;
};

// Verifies a_n increasing and a_{n+1} <= M(a_n) for n = 1..N.
RateDominationReport rate_domination_check(const ExpAffineMap& map, const RateSequence& rates,
                                           int N);

struct CycleCheckRow {
    complexd point;
    double residual;        // |f(p) - p|
    double modulus;         // |p|
    double bound;           // a_1
    double multiplier_abs;  // |f'(p)|
    bool pass;              // modulus < bound
};

// Exhibits a fixed point of modulus below a_1 (hypothesis of the
// nonempty-interior theorems). Fails softly with a note when the offset is too
// small; throws UnsupportedMapError for non-canonical maps.
struct CycleCheckReport {
    std::vector<CycleCheckRow> rows;
    bool all_pass = true;
    std::string note;
};

CycleCheckReport cycle_in_disc_check(const ExpAffineMap& map, const RateSequence& rates);

std::string to_json_string(const RateDominationReport& r);
std::string to_json_string(const CycleCheckReport& r);

}
