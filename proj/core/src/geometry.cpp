#include "escweb/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "escweb/errors.hpp"

namespace escweb {

namespace {

void require_family(Family family) {
    if (family == Family::Other) {
        throw PreconditionError("geometry regions are defined for the two studied families only");
    }
}

}  // namespace

RectR::RectR(Family family_, int m_, int k_) : family(family_), m(m_), k(k_) {
    require_family(family);
    if (k < 0) throw PreconditionError("rectangle level must be nonnegative");
    if (family == Family::FatouType && m < 1) {
        throw PreconditionError("fatou-type rectangles require m >= 1");
    }
    if (family == Family::BergweilerType && m < 0) {
        throw PreconditionError("bergweiler-type rectangles require m >= 0");
    }
}

double RectR::half_width() const {
    if (family == Family::FatouType) return static_cast<double>(m + k);
    return std::exp2(k + 2);
}

double RectR::half_height() const {
    if (family == Family::FatouType) return 2.0 * kPi * static_cast<double>(m + k);
    return std::exp2(k + 1) * kPi;
}

double RectR::enclosing_radius() const {
    if (family == Family::FatouType) return 3.0 * kPi * static_cast<double>(m + k);
    return std::exp2(k + 3);
}

bool RectR::contains(complexd z) const {
    return std::abs(z.real()) < half_width() && std::abs(z.imag()) < half_height();
}

std::vector<RectInDiscRow> rect_in_disc_check(Family family, int kMax, int mMax) {
    require_family(family);
    std::vector<RectInDiscRow> rows;
    const int mLow = family == Family::FatouType ? 1 : 0;
    for (int m = mLow; m <= mMax; ++m) {
        for (int k = 0; k <= kMax; ++k) {
            RectR rect(family, m, k);
            const double corner = std::hypot(rect.half_width(), rect.half_height());
            const double radius = rect.enclosing_radius();
            rows.push_back({m, k, corner, radius, corner < radius});
        }
    }
    return rows;
}

bool HalfStrip::contains(complexd z) const {
    if (z.imag() <= y_low || z.imag() > y_high) return false;  // seam goes to the lower row
    if (family == Family::FatouType) return z.real() <= x_cutoff;
    return z.real() >= x_cutoff;
}

HalfStrip strip_at_level(Family family, int m, int level, long long j) {
    require_family(family);
    if (level < 0) throw PreconditionError("strip level must be nonnegative");
    HalfStrip s;
    s.family = family;
    s.level = level;
    s.j = j;
    s.y_low = kTwoPi * static_cast<double>(j);
    s.y_high = kTwoPi * static_cast<double>(j + 1);
    if (family == Family::FatouType) {
        const long long bound = m + level;
        s.x_cutoff = (-bound <= j && j < bound) ? -static_cast<double>(bound)
                                                : static_cast<double>(bound);
    } else {
        const long long bound = 1LL << level;  // 2^level rows on each side stay absorbed
        const double cutoff = std::exp2(level + 2);
        s.x_cutoff = (-bound <= j && j < bound) ? cutoff : -cutoff;
    }
    return s;
}

long long strip_row_of(double y) {
    double q = std::floor(y / kTwoPi);
    // Exact multiples of 2*pi sit on the seam; they belong to the lower row.
    if (y == kTwoPi * q) return static_cast<long long>(q) - 1;
    return static_cast<long long>(q);
}

std::optional<HalfStrip> half_strip_of(complexd z, int k, int m, Family family) {
    require_family(family);
    if (k < 0) throw PreconditionError("strip level must be nonnegative");
    const long long j = strip_row_of(z.imag());
    HalfStrip s = strip_at_level(family, m, k + 1, j);
    if (s.contains(z)) return s;
    return std::nullopt;
}

std::vector<LemmaSetPoint> sample_lemma_sets(Family family, int m, int samples_per_set,
                                             unsigned long long seed) {
    require_family(family);
    if (samples_per_set <= 0) throw PreconditionError("need a positive sample count");
    if (family == Family::FatouType && m < 1) {
        throw PreconditionError("fatou-type membership sets require m >= 1");
    }
    if (family == Family::BergweilerType && (m < 0 || m > 50)) {
        throw PreconditionError("bergweiler-type membership sets require 0 <= m <= 50");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-100.0, 100.0);
    std::vector<LemmaSetPoint> out;
    out.reserve(static_cast<size_t>(samples_per_set) * 3);

    const bool fatou = family == Family::FatouType;
    const double md = static_cast<double>(m);
    const double twoPow = std::exp2(m + 2);  // bergweiler half-plane / half-line cutoff
    const long long lineFloor = fatou ? m : (1LL << m);

    // Set 0: absorbing half-plane. fatou: x >= m; bergweiler: x <= -2^(m+2).
    for (int i = 0; i < samples_per_set; ++i) {
        double x = box(rng);
        double y = box(rng);
        if (fatou) {
            if (x < md) x = md + (md - x) * 0.5;  // reflect into the half-plane, stay near it
        } else {
            if (x > -twoPow) x = -twoPow - std::abs(x) * 0.25 - 0.5;
        }
        out.push_back({complexd(x, y), 0});
    }

    // Set 1: half-lines at exact ordinates 2*pi*j. Cycle j so every central row
    // |j| < threshold gets hit (threshold rows can exceed the sample count only
    // for large m; then the low rows take priority).
    const long long centralRows = 2 * lineFloor - 1;
    for (int i = 0; i < samples_per_set; ++i) {
        const long long j = i % centralRows - (lineFloor - 1);
        double x = box(rng);
        if (fatou) {
            if (x > -md) x = -md - std::abs(x) * 0.25 - 0.5;
        } else {
            if (x < twoPow) x = twoPow + std::abs(x) * 0.25 + 0.5;
        }
        out.push_back({complexd(x, kTwoPi * static_cast<double>(j)), 1});
    }

    // Set 2: full lines at exact ordinates with |j| in [threshold, threshold+5],
    // both signs cycled.
    for (int i = 0; i < samples_per_set; ++i) {
        long long j = lineFloor + i / 2 % 6;
        if (i % 2 == 1) j = -j;
        out.push_back({complexd(box(rng), kTwoPi * static_cast<double>(j)), 2});
    }

    return out;
}

}
