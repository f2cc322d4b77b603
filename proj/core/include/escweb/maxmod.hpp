#pragma once

#include "escweb/map.hpp"

namespace escweb {

// Lower-bound estimate of the maximum modulus M(r, f) = max_{|z|=r} |f(z)|.
struct MaxModEstimate {
    double r;
    double value;  // >= |f(r e^{i theta})| at every sampled angle
    double theta;  // argmax angle in [0, 2*pi)
};

// Dense equispaced sampling plus golden-section refinement around the best
// sample (tolerance 1e-12 in theta). The estimate never falls below
// max(|f(r)|, |f(-r)|). Throws OverflowError when |d|*r > 709 and
// InvalidRadius when r <= 0.
MaxModEstimate max_modulus(const ExpAffineMap& map, double r, int samples = 4096);

}
