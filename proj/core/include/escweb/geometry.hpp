#pragma once

#include <optional>
#include <vector>

#include "escweb/map.hpp"

namespace escweb {

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kTwoPi = 2.0 * kPi;

// Nested rectangle R_k, centered at the origin.
//   fatou-type:      |x| < m+k,    |y| < 2*(m+k)*pi,  enclosing disc 3*pi*(m+k)
//   bergweiler-type: |x| < 2^(k+2), |y| < 2^(k+1)*pi, enclosing disc 2^(k+3)
struct RectR {
    Family family;
    int m;
    int k;

    RectR(Family family_, int m_, int k_);

    double half_width() const;
    double half_height() const;
    double enclosing_radius() const;
    bool contains(complexd z) const;  // open rectangle
};

struct RectInDiscRow {
    int m;
    int k;
    double corner;
    double radius;
    bool pass;
};

// Numerically verifies corner(R_k) < enclosing radius over k <= kMax, m in [1, mMax].
std::vector<RectInDiscRow> rect_in_disc_check(Family family, int kMax, int mMax);

// Half-strip S_{level,j} of height 2*pi.
//   fatou-type:      { x <= xCutoff }, xCutoff = -(m+level) for -(m+level) <= j < m+level, else +(m+level)
//   bergweiler-type: { x >= xCutoff }, xCutoff = +2^(level+2) for -2^level <= j < 2^level, else -2^(level+2)
// y in [2*pi*j, 2*pi*(j+1)]; points on a shared ordinate belong to the lower j.
struct HalfStrip {
    Family family;
    int level;
    long long j;
    double x_cutoff;
    double y_low;
    double y_high;

    bool contains(complexd z) const;
};

HalfStrip strip_at_level(Family family, int m, int level, long long j);

// Strip row index for an ordinate, ties on y = 2*pi*j resolved to the lower row.
long long strip_row_of(double y);

// The unique S_{k+1,j} containing z, if any (the dichotomy lemma's strips).
std::optional<HalfStrip> half_strip_of(complexd z, int k, int m, Family family);

// Sample point families of the membership lemma: an absorbing half-plane,
// half-lines at y = 2*pi*j for the central rows, and full lines for |j| past
// the family threshold (truncated to threshold + 5 for sampling).
struct LemmaSetPoint {
    complexd z;
    int set_family;  // 0 half-plane, 1 half-lines, 2 lines
};

std::vector<LemmaSetPoint> sample_lemma_sets(Family family, int m, int samples_per_set,
                                             unsigned long long seed);

}
