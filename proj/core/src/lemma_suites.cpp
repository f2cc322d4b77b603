#include "escweb/lemma_suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "escweb/errors.hpp"

namespace escweb {

Lemma31Report verify_lemma31(const ExpAffineMap& map, const RateSequence& rates,
                             int samples_per_set, int budget, std::uint64_t seed) {
    Lemma31Report rep{map, rates, samples_per_set, seed, {}, 0, 0, false};
    const auto pts = sample_lemma_sets(map.family(), rates.m, samples_per_set, seed);
    rep.rows.reserve(pts.size());
    for (const auto& p : pts) {
        OrbitOutcome out = classify_point(map, rates, p.z, budget);
        if (out.cls == OutcomeClass::CertifiedMember) {
            ++rep.certified;
        } else {
            ++rep.other;
        }
        rep.rows.push_back({p.z, p.set_family, out});
    }
    rep.all_certified = rep.other == 0 && rep.certified == static_cast<int>(pts.size());
    return rep;
}

ModulusBoundsReport verify_modulus_bounds(const ExpAffineMap& map, long long samples,
                                          std::uint64_t seed) {
    if (samples < 1) throw PreconditionError("need at least one sample");
    const Family fam = map.family();
    const bool fatou = map == ExpAffineMap::fatou();
    const bool berg = map == ExpAffineMap::bergweiler();
    if (!fatou && !berg) {
        throw UnsupportedMapError("two-sided modulus bounds are pinned to the canonical maps");
    }

    ModulusBoundsReport rep{map, samples, seed};
    rep.worst_low_ratio = std::numeric_limits<double>::infinity();
    rep.worst_high_ratio = 0.0;

    std::mt19937_64 rng(seed);
    // Cone |z| <= 2|x| with the exponential argument capped so evaluation stays finite.
    std::uniform_real_distribution<double> xs(fatou ? -700.0 : 4.0, fatou ? -3.0 : 700.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double sqrt3 = std::sqrt(3.0);
    constexpr double kSlack = 1e-12;

    for (long long i = 0; i < samples; ++i) {
        const double x = xs(rng);
        const double y = unit(rng) * sqrt3 * std::abs(x);
        const complexd z(x, y);
        const double mod = std::abs(evaluate(map, z));
        const double core = std::exp(fam == Family::FatouType ? -x : x);
        const double low = 0.5 * core;
        const double high = 2.0 * core;
        rep.worst_low_ratio = std::min(rep.worst_low_ratio, mod / low);
        rep.worst_high_ratio = std::max(rep.worst_high_ratio, mod / high);
        if (mod < low * (1.0 - kSlack) || mod > high * (1.0 + kSlack)) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

StripCoverageReport strip_coverage_check(Family family, int k, int m, long long samples,
                                         std::uint64_t seed) {
    if (family == Family::Other) {
        throw PreconditionError("coverage dichotomy is defined for the two studied families only");
    }
    if (samples < 1) throw PreconditionError("need at least one sample");

    StripCoverageReport rep;
    rep.family = family;
    rep.k = k;
    rep.m = m;
    rep.samples = samples;
    rep.seed = seed;

    RectR outer(family, m, k + 1);
    const double W = outer.half_width();
    const double H = outer.half_height();
    const double planeBound =
        family == Family::FatouType ? static_cast<double>(m + k + 1) : -std::exp2(k + 3);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xs(-3.0 * W, 3.0 * W);
    std::uniform_real_distribution<double> ys(-3.0 * H, 3.0 * H);

    long long produced = 0;
    while (produced < samples) {
        const complexd z(xs(rng), ys(rng));
        if (std::abs(z.real()) <= W && std::abs(z.imag()) <= H) continue;  // inside closure of R_{k+1}
        ++produced;

        // Boundary lines carry the deliberate double assignments; skip exact hits.
        const double q = std::floor(z.imag() / kTwoPi);
        const bool onSeam = z.imag() == kTwoPi * q || std::abs(z.real()) == W;
        if (onSeam) {
            ++rep.skipped_on_seam;
            continue;
        }
        ++rep.tested;

        const bool inPlane = family == Family::FatouType ? z.real() >= planeBound
                                                         : z.real() <= planeBound;
        int stripHits = 0;
        const long long j = strip_row_of(z.imag());
        for (long long dj = -1; dj <= 1; ++dj) {
            if (strip_at_level(family, m, k + 1, j + dj).contains(z)) ++stripHits;
        }
        if ((inPlane ? 1 : 0) + stripHits != 1) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

}
