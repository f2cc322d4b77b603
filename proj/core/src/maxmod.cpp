#include "escweb/maxmod.hpp"

#include <cmath>
#include <stdexcept>

#include "escweb/errors.hpp"

namespace escweb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kGolden = 0.6180339887498948482;  // 1/phi

double modulus_at(const ExpAffineMap& map, double r, double theta) {
    const complexd z = std::polar(r, theta);
    return std::abs(map.a * z + map.b + map.c * std::exp(map.d * z));
}

}

MaxModEstimate max_modulus(const ExpAffineMap& map, double r, int samples) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidRadius("max_modulus requires r > 0");
    if (samples < 4) throw std::invalid_argument("max_modulus requires samples >= 4");
    if (std::abs(map.d) * r > kExpArgMax)
        throw OverflowError("max_modulus: exp(|d| r) exceeds binary64 range");

    double best_theta = 0.0;
    double best = modulus_at(map, r, 0.0);
    for (int k = 1; k < samples; ++k) {
        const double theta = kTwoPi * k / samples;
        const double v = modulus_at(map, r, theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }

    // Golden-section ascent on the bracket around the best grid angle.
    double lo = best_theta - kTwoPi / samples;
    double hi = best_theta + kTwoPi / samples;
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = modulus_at(map, r, x1);
    double f2 = modulus_at(map, r, x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = modulus_at(map, r, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = modulus_at(map, r, x1);
        }
    }
    const double refined_theta = 0.5 * (lo + hi);
    const double refined = modulus_at(map, r, refined_theta);

    MaxModEstimate est{r, best, best_theta};
    if (refined > est.value) {
        est.value = refined;
        est.theta = refined_theta;
    }
    // Contract: never below the two real-axis evaluations.
    const double at_pos = modulus_at(map, r, 0.0);
    const double at_neg = modulus_at(map, r, std::acos(-1.0));
    if (at_pos > est.value) {
        est.value = at_pos;
        est.theta = 0.0;
    }
    if (at_neg > est.value) {
        est.value = at_neg;
        est.theta = std::acos(-1.0);
    }
    if (est.theta < 0.0) est.theta += kTwoPi;
    return est;
}

}
