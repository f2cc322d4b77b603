#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "escweb/components.hpp"
#include "escweb/errors.hpp"
#include "escweb/geometry.hpp"
#include "escweb/rasterize.hpp"
#include "oracles.hpp"

using namespace escweb;

namespace {

// Unit-cell grid: pixel (i,j) covers [i,i+1] x [h-j-1, h-j] in the plane.
RegionMask make_mask(int w, int h, const std::vector<std::pair<int, int>>& violated) {
    GridSpec spec(0, w, 0, h, w, h, ExpAffineMap::fatou(), RateSequence::arithmetic(6), 200);
    RegionMask mask{spec, std::vector<Cell>(static_cast<size_t>(w) * h,
                                            Cell{OutcomeClass::CertifiedMember, 0}),
                    std::nullopt};
    for (auto [i, j] : violated)
        mask.cells[static_cast<size_t>(j) * w + i] = Cell{OutcomeClass::Violated, 1};
    return mask;
}

void check_component_invariants(const RegionMask& mask,
                                const std::vector<ComponentRecord>& comps) {
    const GridSpec& spec = mask.spec;
    std::set<int> seen;
    int lastFirst = -1;
    for (const auto& c : comps) {
        CHECK(c.pixel_count == static_cast<int>(c.pixels.size()));
        CHECK(c.pixels.front() > lastFirst);  // ids in scan order of first pixel
        lastFirst = c.pixels.front();
        for (size_t p = 0; p < c.pixels.size(); ++p) {
            if (p) CHECK(c.pixels[p] > c.pixels[p - 1]);  // ascending
            CHECK(seen.insert(c.pixels[p]).second);       // disjoint
            int i = c.pixels[p] % spec.width, j = c.pixels[p] / spec.width;
            CHECK(mask.at(i, j).cls == OutcomeClass::Violated);
            CHECK(i >= c.bbox.i0);
            CHECK(i <= c.bbox.i1);
            CHECK(j >= c.bbox.j0);
            CHECK(j <= c.bbox.j1);
        }
        CHECK(c.diameter == doctest::Approx(oracle::brute_diameter(c, spec)).epsilon(1e-12));
        if (c.touches_border) {
            CHECK(c.boundary_loop.empty());
        } else {
            REQUIRE(c.boundary_loop.size() >= 5);
            CHECK(c.boundary_loop.front() == c.boundary_loop.back());
            CHECK(oracle::loop_separates(c.boundary_loop, c, mask));
            for (int idx : c.pixels) {
                complexd center = spec.pixel_center(idx % spec.width, idx / spec.width);
                CHECK(oracle::winding_number(c.boundary_loop, center) == 1);  // counterclockwise
            }
        }
    }
    int violatedTotal = 0;
    for (const Cell& cell : mask.cells)
        if (cell.cls == OutcomeClass::Violated) ++violatedTotal;
    CHECK(static_cast<int>(seen.size()) == violatedTotal);  // partition
}

}

TEST_CASE("single pixel component") {
    RegionMask mask = make_mask(5, 5, {{2, 2}});
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 1);
    const auto& c = comps[0];
    CHECK(c.id == 0);
    CHECK(c.pixel_count == 1);
    CHECK(!c.touches_border);
    CHECK(c.bbox.i0 == 2);
    CHECK(c.bbox.i1 == 2);
    CHECK(c.diameter == 0.0);
    CHECK(c.boundary_loop.size() == 5);  // 4 unit edges, closed
    check_component_invariants(mask, comps);

    PlaneRect ext = cell_extent(c.bbox, mask.spec);
    CHECK(ext.x0 == 2.0);
    CHECK(ext.x1 == 3.0);
    CHECK(ext.y0 == 2.0);  // row 2 of 5 covers plane y in [2,3]
    CHECK(ext.y1 == 3.0);
}

TEST_CASE("diagonal pixels are separate components under 4-connectivity") {
    RegionMask mask = make_mask(5, 5, {{1, 1}, {2, 2}});
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].pixel_count == 1);
    CHECK(comps[1].pixel_count == 1);
    check_component_invariants(mask, comps);
}

TEST_CASE("plus-shaped component") {
    RegionMask mask = make_mask(5, 5, {{2, 1}, {1, 2}, {2, 2}, {3, 2}, {2, 3}});
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].pixel_count == 5);
    CHECK(comps[0].diameter == 2.0);
    CHECK(comps[0].boundary_loop.size() == 13);  // 12 crack edges
    CHECK(oracle::winding_number(comps[0].boundary_loop,
                                 mask.spec.pixel_center(1, 1)) == 0);  // notch corner outside
    check_component_invariants(mask, comps);
}

TEST_CASE("border components carry no loop and refuse tracing") {
    RegionMask mask = make_mask(5, 5, {{0, 2}, {1, 2}});
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].touches_border);
    CHECK(comps[0].boundary_loop.empty());
    CHECK_THROWS_AS(trace_boundary(comps[0], mask), BorderComponentError);
    check_component_invariants(mask, comps);
}

TEST_CASE("ring component encloses its hole") {
    std::vector<std::pair<int, int>> ring;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (!(i == 2 && j == 2)) ring.push_back({i, j});
    RegionMask mask = make_mask(5, 5, ring);
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].pixel_count == 8);
    CHECK(comps[0].boundary_loop.size() == 13);  // outer square only
    CHECK(oracle::winding_number(comps[0].boundary_loop, mask.spec.pixel_center(2, 2)) == 1);
    check_component_invariants(mask, comps);
}

TEST_CASE("pinch corner resolves without self-crossing") {
    // X X .
    // X . X
    // X X X   corner between (1,0)/(2,1) is visited twice by the crack walk
    RegionMask mask =
        make_mask(3, 3, {{0, 0}, {1, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}});
    auto comps = label_components(mask);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].pixel_count == 7);
    CHECK(comps[0].touches_border);  // at the grid edge: loop suppressed

    // embed the same shape away from the border so the loop exists
    RegionMask big =
        make_mask(7, 7, {{2, 2}, {3, 2}, {2, 3}, {4, 3}, {2, 4}, {3, 4}, {4, 4}});
    auto bc = label_components(big);
    REQUIRE(bc.size() == 1);
    REQUIRE(!bc[0].touches_border);
    CHECK(bc[0].boundary_loop.size() == 17);  // pinch corner visited twice
    check_component_invariants(big, bc);
    // the crack walk keeps the background 8-connected at the pinch, so the
    // inner cell drains to the outside and winds zero
    CHECK(oracle::winding_number(bc[0].boundary_loop, big.spec.pixel_center(4, 2)) == 0);
    CHECK(oracle::winding_number(bc[0].boundary_loop, big.spec.pixel_center(3, 3)) == 0);
}

TEST_CASE("random masks keep the labeling invariants") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<int, int>> v;
        for (int j = 0; j < 9; ++j)
            for (int i = 0; i < 12; ++i)
                if (rng() % 3 == 0) v.push_back({i, j});
        RegionMask mask = make_mask(12, 9, v);
        check_component_invariants(mask, label_components(mask));
    }
}

TEST_CASE("custom complement classes") {
    RegionMask mask = make_mask(4, 4, {{1, 1}});
    mask.cells[2 * 4 + 1] = Cell{OutcomeClass::BudgetExhausted, 200};  // below the violated pixel
    auto joined = label_components(mask, {OutcomeClass::Violated, OutcomeClass::BudgetExhausted});
    REQUIRE(joined.size() == 1);
    CHECK(joined[0].pixel_count == 2);
    auto strict = label_components(mask);
    REQUIRE(strict.size() == 1);
    CHECK(strict[0].pixel_count == 1);
    CHECK_THROWS_AS(label_components(mask, {}), PreconditionError);
}

TEST_CASE("remark 4.2 style disjointness check on synthetic data") {
    // R0 for m = 6 is {|x| < 6, |y| < 12 pi}; the 40x40 unit grid spans
    // [0,40]x[0,40] so y always overlaps and x decides disjointness.
    std::vector<std::pair<int, int>> blobA;  // x extent [20,24]: disjoint, small
    for (int i = 20; i < 24; ++i)
        for (int j = 10; j < 13; ++j) blobA.push_back({i, j});
    RegionMask mask = make_mask(40, 40, blobA);
    auto comps = label_components(mask);
    RectR r0(Family::FatouType, 6, 0);
    Remark42Report rep = remark42_check(comps, r0, mask.spec);
    CHECK(rep.components_total == 1);
    CHECK(rep.components_checked == 1);
    CHECK(rep.pass);
    CHECK(rep.largest_checked_diameter < 12.0);
    CHECK(rep.largest_checked_diameter > 0.0);

    // a 20-pixel-wide bar has diameter 19 > 12: flagged
    std::vector<std::pair<int, int>> bar;
    for (int i = 10; i < 30; ++i) bar.push_back({i, 20});
    RegionMask bad = make_mask(40, 40, bar);
    auto badComps = label_components(bad);
    Remark42Report badRep = remark42_check(badComps, r0, bad.spec);
    CHECK(badRep.components_checked == 1);
    CHECK(!badRep.pass);
    REQUIRE(badRep.violator_ids.size() == 1);
    CHECK(badRep.violator_ids[0] == badComps[0].id);

    // overlapping R0 in x: exempt from the diameter requirement
    std::vector<std::pair<int, int>> wide;
    for (int i = 2; i < 25; ++i) wide.push_back({i, 25});
    RegionMask overlap = make_mask(40, 40, wide);
    Remark42Report overlapRep = remark42_check(label_components(overlap), r0, overlap.spec);
    CHECK(overlapRep.components_checked == 0);
    CHECK(overlapRep.pass);

    // border components are never checked
    std::vector<std::pair<int, int>> edge;
    for (int i = 15; i < 40; ++i) edge.push_back({i, 5});
    Remark42Report edgeRep = remark42_check(label_components(make_mask(40, 40, edge)), r0,
                                            make_mask(40, 40, edge).spec);
    CHECK(edgeRep.components_checked == 0);
}

TEST_CASE("spiders web evidence summaries") {
    RegionMask clean = make_mask(6, 6, {});
    SpidersWebEvidence ev = spiders_web_evidence(clean);
    CHECK(ev.complement_pixels == 0);
    CHECK(!ev.has_bounded_component);
    CHECK(ev.note.find("no evidence") != std::string::npos);

    RegionMask blob = make_mask(6, 6, {{2, 2}, {3, 2}});
    blob.cells[0] = Cell{OutcomeClass::RangeExceeded, 4};
    ev = spiders_web_evidence(blob);
    CHECK(ev.complement_pixels == 2);
    CHECK(ev.components_total == 1);
    CHECK(ev.bounded_components == 1);
    CHECK(ev.has_bounded_component);
    CHECK(ev.largest_bounded_diameter == 1.0);
    CHECK(ev.range_exceeded_fraction == doctest::Approx(1.0 / 36.0));
}

TEST_CASE("a real render yields bounded complement components") {
    GridSpec spec(-8, 8, -12 * kPi, 12 * kPi, 64, 64, ExpAffineMap::fatou(),
                  RateSequence::arithmetic(6), 200);
    RegionMask mask = rasterize(spec);
    auto comps = label_components(mask);
    check_component_invariants(mask, comps);
    int bounded = 0;
    for (const auto& c : comps)
        if (!c.touches_border) ++bounded;
    CHECK(bounded >= 1);
    SpidersWebEvidence ev = spiders_web_evidence(mask);
    CHECK(ev.has_bounded_component);
    CHECK(ev.bounded_components == bounded);
}
