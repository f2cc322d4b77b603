#include "escweb/components.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "escweb/errors.hpp"

namespace escweb {

PlaneRect cell_extent(const PixelRect& bbox, const GridSpec& spec) {
    return {spec.x_min + bbox.i0 * spec.dx(), spec.x_min + (bbox.i1 + 1) * spec.dx(),
            spec.y_max - (bbox.j1 + 1) * spec.dy(), spec.y_max - bbox.j0 * spec.dy()};
}

namespace {

double cross(complexd o, complexd a, complexd b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

// Monotone chain; returns hull in counterclockwise order without the closing
// repeat. Collinear points are dropped.
std::vector<complexd> convex_hull(std::vector<complexd> pts) {
    std::sort(pts.begin(), pts.end(), [](complexd a, complexd b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<complexd> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Rotating calipers on a counterclockwise hull.
double hull_diameter(const std::vector<complexd>& hull) {
    const size_t n = hull.size();
    if (n < 2) return 0.0;
    if (n == 2) return std::abs(hull[0] - hull[1]);
    double best = 0.0;
    size_t k = 1;
    for (size_t i = 0; i < n; ++i) {
        const size_t i1 = (i + 1) % n;
        while (true) {
            const size_t k1 = (k + 1) % n;
            const complexd edge = hull[i1] - hull[i];
            const double area = edge.real() * (hull[k1].imag() - hull[k].imag()) -
                                edge.imag() * (hull[k1].real() - hull[k].real());
            if (area > 0) {
                k = k1;
            } else {
                break;
            }
        }
        best = std::max({best, std::abs(hull[i] - hull[k]), std::abs(hull[i1] - hull[k])});
    }
    return best;
}

}  // namespace

std::vector<ComponentRecord> label_components(const RegionMask& mask,
                                              const std::set<OutcomeClass>& complement_classes) {
    if (complement_classes.empty()) {
        throw PreconditionError("complement class set must be nonempty");
    }
    const GridSpec& spec = mask.spec;
    const int W = spec.width;
    const int H = spec.height;
    const size_t total = static_cast<size_t>(W) * H;

    std::vector<bool> inC(total, false);
    for (size_t p = 0; p < total; ++p) {
        inC[p] = complement_classes.count(mask.cells[p].cls) > 0;
    }

    std::vector<int> label(total, -1);
    std::vector<ComponentRecord> out;
    std::vector<int> stack;

    for (size_t seed = 0; seed < total; ++seed) {
        if (!inC[seed] || label[seed] >= 0) continue;
        const int id = static_cast<int>(out.size());
        ComponentRecord rec;
        rec.id = id;
        rec.pixel_count = 0;
        rec.touches_border = false;
        rec.bbox = {W, -1, H, -1};
        rec.diameter = 0.0;

        stack.clear();
        stack.push_back(static_cast<int>(seed));
        label[seed] = id;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            const int i = p % W;
            const int j = p / W;
            rec.pixels.push_back(p);
            ++rec.pixel_count;
            rec.bbox.i0 = std::min(rec.bbox.i0, i);
            rec.bbox.i1 = std::max(rec.bbox.i1, i);
            rec.bbox.j0 = std::min(rec.bbox.j0, j);
            rec.bbox.j1 = std::max(rec.bbox.j1, j);
            if (i == 0 || j == 0 || i == W - 1 || j == H - 1) rec.touches_border = true;

            const int nbr[4] = {p - W, p - 1, p + 1, p + W};
            const bool ok[4] = {j > 0, i > 0, i < W - 1, j < H - 1};
            for (int t = 0; t < 4; ++t) {
                if (!ok[t]) continue;
                const int q = nbr[t];
                if (inC[q] && label[q] < 0) {
                    label[q] = id;
                    stack.push_back(q);
                }
            }
        }

        std::sort(rec.pixels.begin(), rec.pixels.end());
        std::vector<complexd> centers;
        centers.reserve(rec.pixels.size());
        for (int p : rec.pixels) centers.push_back(spec.pixel_center(p % W, p / W));
        rec.diameter = hull_diameter(convex_hull(std::move(centers)));
        out.push_back(std::move(rec));
    }

    for (auto& rec : out) {
        if (!rec.touches_border) rec.boundary_loop = trace_boundary(rec, mask);
    }
    return out;
}

namespace {

// Directed crack edges between pixel corners, oriented so the walk runs
// counterclockwise in plane coordinates around the component.
struct Corner {
    int ci, cj;
    bool operator<(const Corner& o) const { return ci < o.ci || (ci == o.ci && cj < o.cj); }
    bool operator==(const Corner& o) const { return ci == o.ci && cj == o.cj; }
};

struct DirEdge {
    Corner from;
    int dci, dcj;
    Corner to() const { return {from.ci + dci, from.cj + dcj}; }
    bool operator==(const DirEdge& o) const {
        return from == o.from && dci == o.dci && dcj == o.dcj;
    }
};

}  // namespace

std::vector<complexd> trace_boundary(const ComponentRecord& component, const RegionMask& mask) {
    if (component.touches_border) {
        throw BorderComponentError("boundary tracing requires a component away from the border");
    }
    const GridSpec& spec = mask.spec;
    const int W = spec.width;

    std::vector<bool> inC(static_cast<size_t>(W) * spec.height, false);
    for (int p : component.pixels) inC[p] = true;
    auto member = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= W || j >= spec.height) return false;
        return static_cast<bool>(inC[static_cast<size_t>(j) * W + i]);
    };

    // Component-on-the-left emission per exposed side (raster corner lattice,
    // cj grows downward):
    //   bottom: (i,j+1)->(i+1,j+1)   right: (i+1,j+1)->(i+1,j)
    //   top:    (i+1,j)->(i,j)       left:  (i,j)->(i,j+1)
    std::map<Corner, std::vector<DirEdge>> outgoing;
    for (int p : component.pixels) {
        const int i = p % W;
        const int j = p / W;
        if (!member(i, j + 1)) outgoing[{i, j + 1}].push_back({{i, j + 1}, 1, 0});
        if (!member(i + 1, j)) outgoing[{i + 1, j + 1}].push_back({{i + 1, j + 1}, 0, -1});
        if (!member(i, j - 1)) outgoing[{i + 1, j}].push_back({{i + 1, j}, -1, 0});
        if (!member(i - 1, j)) outgoing[{i, j}].push_back({{i, j}, 0, 1});
    }

    // First pixel in scan order: its top-left corner starts the outer loop,
    // heading down its exposed left side.
    const int p0 = component.pixels.front();
    const DirEdge start{{p0 % W, p0 / W}, 0, 1};

    auto successor = [&](const DirEdge& e) {
        const auto& cands = outgoing.at(e.to());
        if (cands.size() == 1) return cands.front();
        // Pinch corner: two diagonal component pixels share it. Hug the pixel
        // just passed: raster cross(u, v) = -1 picks that continuation.
        for (const DirEdge& c : cands) {
            if (e.dci * c.dcj - e.dcj * c.dci == -1) return c;
        }
        throw PreconditionError("inconsistent boundary edge set");
    };

    auto to_plane = [&](Corner c) {
        return complexd(spec.x_min + c.ci * spec.dx(), spec.y_max - c.cj * spec.dy());
    };

    std::vector<complexd> loop;
    loop.push_back(to_plane(start.from));
    DirEdge e = start;
    do {
        loop.push_back(to_plane(e.to()));
        e = successor(e);
    } while (!(e == start));
    return loop;
}

Remark42Report remark42_check(const std::vector<ComponentRecord>& components, const RectR& rect0,
                              const GridSpec& spec) {
    Remark42Report rep;
    rep.components_total = static_cast<int>(components.size());
    const double W0 = rect0.half_width();
    const double H0 = rect0.half_height();
    for (const auto& c : components) {
        if (c.touches_border) continue;
        const PlaneRect ext = cell_extent(c.bbox, spec);
        const bool disjoint = ext.x1 <= -W0 || ext.x0 >= W0 || ext.y1 <= -H0 || ext.y0 >= H0;
        if (!disjoint) continue;
        ++rep.components_checked;
        rep.largest_checked_diameter = std::max(rep.largest_checked_diameter, c.diameter);
        if (!(c.diameter < 12.0)) rep.violator_ids.push_back(c.id);
    }
    rep.pass = rep.violator_ids.empty();
    return rep;
}

SpidersWebEvidence spiders_web_evidence(const RegionMask& mask) {
    SpidersWebEvidence ev;
    const auto components = label_components(mask);
    ev.components_total = static_cast<int>(components.size());
    long long range = 0;
    for (const Cell& cell : mask.cells) {
        if (cell.cls == OutcomeClass::Violated) ++ev.complement_pixels;
        if (cell.cls == OutcomeClass::RangeExceeded) ++range;
    }
    ev.range_exceeded_fraction =
        static_cast<double>(range) / static_cast<double>(mask.cells.size());
    for (const auto& c : components) {
        if (c.touches_border) continue;
        ++ev.bounded_components;
        ev.largest_bounded_diameter = std::max(ev.largest_bounded_diameter, c.diameter);
    }
    ev.has_bounded_component = ev.bounded_components > 0;
    ev.note = ev.has_bounded_component
                  ? "bounded complement component present at window scale"
                  : "no evidence: no bounded complement component at window scale";
    return ev;
}

}
