#pragma once

#include <set>
#include <string>
#include <vector>

#include "escweb/geometry.hpp"
#include "escweb/grid.hpp"

namespace escweb {

struct PixelRect {
    int i0, i1, j0, j1;  // inclusive pixel index bounds
};

struct ComponentRecord {
    int id;
    int pixel_count;
    bool touches_border;
    PixelRect bbox;
    double diameter;                     // max pairwise distance of hull pixel centers
    std::vector<complexd> boundary_loop;  // closed, first == last; empty for border components
    std::vector<int> pixels;              // row-major mask indices, ascending
};

// Plane rectangle covering the component's cells (not just their centers).
struct PlaneRect {
    double x0, x1, y0, y1;
};

PlaneRect cell_extent(const PixelRect& bbox, const GridSpec& spec);

// 4-connected components of the complement-class pixels, ids in scan order of
// each component's first pixel.
std::vector<ComponentRecord> label_components(
    const RegionMask& mask, const std::set<OutcomeClass>& complement_classes = {
                                OutcomeClass::Violated});

// Outer boundary loop of a non-border component as plane points on the pixel
// corner lattice, counterclockwise, closed. Throws BorderComponentError when
// the component touches the grid border.
std::vector<complexd> trace_boundary(const ComponentRecord& component, const RegionMask& mask);

struct Remark42Report {
    int components_total = 0;
    int components_checked = 0;   // bounded and cell-extent disjoint from R0
    std::vector<int> violator_ids;
    double largest_checked_diameter = 0.0;
    bool pass = false;
};

// Every bounded component whose cell extent is disjoint from rect0 must have
// diameter < 12.
Remark42Report remark42_check(const std::vector<ComponentRecord>& components,
                              const RectR& rect0, const GridSpec& spec);

struct SpidersWebEvidence {
    int complement_pixels = 0;
    int components_total = 0;
    int bounded_components = 0;
    double largest_bounded_diameter = 0.0;
    double range_exceeded_fraction = 0.0;
    bool has_bounded_component = false;
    std::string note;
};

SpidersWebEvidence spiders_web_evidence(const RegionMask& mask);

std::string to_json_string(const std::vector<ComponentRecord>& components, const GridSpec& spec);
std::string to_json_string(const Remark42Report& r);
std::string to_json_string(const SpidersWebEvidence& r);

}
