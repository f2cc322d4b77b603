#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "escweb/grid.hpp"

namespace escweb {

struct Rgb {
    std::uint8_t r;
    std::uint8_t g;
    std::uint8_t b;
};

inline bool operator==(Rgb lhs, Rgb rhs) {
    return lhs.r == rhs.r && lhs.g == rhs.g && lhs.b == rhs.b;
}

// Indexed by static_cast<size_t>(OutcomeClass). Every class must be mapped to
// a distinct color before an image can be written.
using Palette = std::array<std::optional<Rgb>, 4>;

// black = member, white = violated (the complement), grey = budget exhausted,
// red = numeric range exceeded.
Palette default_palette();

// Binary PPM (P6, 8-bit RGB) plus a JSON metadata sidecar at path + ".json".
// The sidecar records window, resolution, map parameters, rates, budget,
// palette, library version and the caller's config digest; no timestamps, so
// re-runs are byte-identical.
void write_image(const RegionMask& mask, const std::string& path, const Palette& palette,
                 const std::string& config_digest = "");

// Raw pixel dump, 3 bytes per pixel, row-major from the top row.
void write_ppm(const std::string& path, int width, int height,
               const std::uint8_t* rgb_bytes);

}
