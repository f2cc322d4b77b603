#pragma once

#include <optional>
#include <vector>

#include "escweb/map.hpp"
#include "escweb/orbit.hpp"
#include "escweb/rates.hpp"

namespace escweb {

// Pixel (i,j) center = (xMin + (i+1/2)dx, yMax - (j+1/2)dy); row 0 is the top.
struct GridSpec {
    double x_min;
    double x_max;
    double y_min;
    double y_max;
    int width;
    int height;
    ExpAffineMap map;
    RateSequence rates;
    int budget = kDefaultBudget;

    GridSpec(double x_min_, double x_max_, double y_min_, double y_max_, int width_, int height_,
             const ExpAffineMap& map_, const RateSequence& rates_, int budget_ = kDefaultBudget);

    double dx() const { return (x_max - x_min) / width; }
    double dy() const { return (y_max - y_min) / height; }
    complexd pixel_center(int i, int j) const {
        return {x_min + (i + 0.5) * dx(), y_max - (j + 0.5) * dy()};
    }
};

struct Cell {
    OutcomeClass cls;
    int step;  // deciding step; budget for BudgetExhausted
};

struct RegionMask {
    GridSpec spec;
    std::vector<Cell> cells;                 // row-major, cells[j*width + i]
    std::optional<double> julia_radius;      // set by the fast-escape renderer

    Cell at(int i, int j) const { return cells[static_cast<size_t>(j) * spec.width + i]; }
};

}
