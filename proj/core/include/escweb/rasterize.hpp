#pragma once

#include "escweb/grid.hpp"

namespace escweb {

// Classify every pixel center. workers = 0 picks a machine-dependent count;
// the mask is bit-identical for any worker count.
RegionMask rasterize(const GridSpec& spec, int workers = 0);

// 2x2 subsample majority vote per pixel (ties resolved by subsample scan
// order: first class to reach the winning count stays).
RegionMask rasterize_supersampled(const GridSpec& spec, int workers = 0);

// Fast-escape (Julia-approximation) mask: cell class from fast_escape_test
// against the tower of iterated maximum-modulus thresholds for radius R.
RegionMask render_julia_approx(const GridSpec& spec, double R, int workers = 0);

}
