#include "escweb/rasterize.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <thread>
#include <vector>

#include "escweb/errors.hpp"

namespace escweb {

GridSpec::GridSpec(double x_min_, double x_max_, double y_min_, double y_max_, int width_,
                   int height_, const ExpAffineMap& map_, const RateSequence& rates_, int budget_)
    : x_min(x_min_),
      x_max(x_max_),
      y_min(y_min_),
      y_max(y_max_),
      width(width_),
      height(height_),
      map(map_),
      rates(rates_),
      budget(budget_) {
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw ConfigError("window must satisfy xMin < xMax and yMin < yMax");
    }
    if (width < 1 || height < 1) throw ConfigError("resolution must be at least 1x1");
    if (budget < 1) throw ConfigError("budget must be positive");
}

namespace {

// Deterministic row-parallel fill: each worker owns a fixed interleaved set of
// rows, every cell is written exactly once, so the mask never depends on the
// worker count.
void fill_rows(RegionMask& mask, int workers,
               const std::function<Cell(complexd)>& classify_cell) {
    const GridSpec& spec = mask.spec;
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = static_cast<int>(std::clamp(hw, 1u, 8u));
    }
    workers = std::min(workers, spec.height);

    auto work = [&](int firstRow) {
        for (int j = firstRow; j < spec.height; j += workers) {
            Cell* row = mask.cells.data() + static_cast<size_t>(j) * spec.width;
            for (int i = 0; i < spec.width; ++i) {
                row[i] = classify_cell(spec.pixel_center(i, j));
            }
        }
    };

    if (workers == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
}

Cell to_cell(const OrbitOutcome& out) { return {out.cls, out.step}; }

}  // namespace

RegionMask rasterize(const GridSpec& spec, int workers) {
    RegionMask mask{spec, std::vector<Cell>(static_cast<size_t>(spec.width) * spec.height), {}};
    fill_rows(mask, workers, [&](complexd z) {
        return to_cell(classify_point(spec.map, spec.rates, z, spec.budget));
    });
    return mask;
}

RegionMask rasterize_supersampled(const GridSpec& spec, int workers) {
    RegionMask mask{spec, std::vector<Cell>(static_cast<size_t>(spec.width) * spec.height), {}};
    const double qx = spec.dx() / 4.0;
    const double qy = spec.dy() / 4.0;
    fill_rows(mask, workers, [&](complexd z) {
        const std::array<complexd, 4> sub = {
            complexd(z.real() - qx, z.imag() + qy), complexd(z.real() + qx, z.imag() + qy),
            complexd(z.real() - qx, z.imag() - qy), complexd(z.real() + qx, z.imag() - qy)};
        std::array<Cell, 4> cells;
        std::array<int, 4> votes{};
        for (size_t s = 0; s < 4; ++s) {
            cells[s] = to_cell(classify_point(spec.map, spec.rates, sub[s], spec.budget));
            ++votes[static_cast<size_t>(cells[s].cls)];
        }
        size_t best = 0;
        for (size_t s = 1; s < 4; ++s) {
            if (votes[static_cast<size_t>(cells[s].cls)] >
                votes[static_cast<size_t>(cells[best].cls)]) {
                best = s;
            }
        }
        return cells[best];
    });
    return mask;
}

RegionMask render_julia_approx(const GridSpec& spec, double R, int workers) {
    const auto thresholds = fast_escape_thresholds(spec.map, R, spec.budget);
    RegionMask mask{spec, std::vector<Cell>(static_cast<size_t>(spec.width) * spec.height), R};
    fill_rows(mask, workers, [&](complexd z) {
        return to_cell(fast_escape_test(spec.map, z, thresholds, spec.budget));
    });
    return mask;
}

}
