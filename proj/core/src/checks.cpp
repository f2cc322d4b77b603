#include "escweb/checks.hpp"

#include <cmath>
#include <limits>

#include "escweb/errors.hpp"

namespace escweb {

RateDominationReport rate_domination_check(const ExpAffineMap& map, const RateSequence& rates,
                                           int N) {
    if (N < 1) throw std::invalid_argument("rate_domination_check requires N >= 1");
    RateDominationReport report;
    report.rows.reserve(size_t(N));
    for (int n = 1; n <= N; ++n) {
        const double a_n = rates.eval(n);
        const double a_next = rates.eval(n + 1);
        // Past the exp range the circle maximum dwarfs any finite rate value.
        double M = std::numeric_limits<double>::infinity();
        try {
            M = max_modulus(map, a_n).value;
        } catch (const OverflowError&) {
        }
        const bool pass = a_next > a_n && a_next <= M;
        report.rows.push_back({n, a_n, a_next, M, pass});
        report.all_pass = report.all_pass && pass;
    }
    return report;
}

CycleCheckReport cycle_in_disc_check(const ExpAffineMap& map, const RateSequence& rates) {
    CycleCheckReport report;
    const double pi = std::acos(-1.0);
    std::vector<complexd> fixed_points;
    if (map == ExpAffineMap::fatou()) {
        fixed_points = {complexd(0.0, pi), complexd(0.0, -pi)};
    } else if (map == ExpAffineMap::bergweiler()) {
        fixed_points = {complexd(std::log(2.0), 0.0)};
    } else {
        throw UnsupportedMapError("cycle_in_disc_check: fixed points known only for the canonical maps");
    }

    const double bound = rates.eval(1);
    for (complexd p : fixed_points) {
        const double residual = std::abs(evaluate(map, p) - p);
        const double modulus = std::abs(p);
        const double mult = std::abs(derivative(map, p));
        const bool pass = modulus < bound;
        report.rows.push_back({p, residual, modulus, bound, mult, pass});
        report.all_pass = report.all_pass && pass;
    }
    if (!report.all_pass)
        report.note =
            "fixed point does not fit inside the first rate disc at this offset; "
            "the hypothesis holds for larger offsets and smaller offsets inherit "
            "the conclusion because the escape set only grows as m decreases";
    return report;
}

}
