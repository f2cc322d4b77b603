#include "escweb/image.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "escweb/errors.hpp"
#include "escweb/version.hpp"

namespace escweb {

Palette default_palette() {
    Palette p;
    p[static_cast<size_t>(OutcomeClass::Violated)] = Rgb{255, 255, 255};
    p[static_cast<size_t>(OutcomeClass::CertifiedMember)] = Rgb{0, 0, 0};
    p[static_cast<size_t>(OutcomeClass::BudgetExhausted)] = Rgb{170, 170, 170};
    p[static_cast<size_t>(OutcomeClass::RangeExceeded)] = Rgb{200, 40, 40};
    return p;
}

void write_ppm(const std::string& path, int width, int height, const std::uint8_t* rgb_bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", width, height);
    out.write(header, n);
    out.write(reinterpret_cast<const char*>(rgb_bytes),
              static_cast<std::streamsize>(width) * height * 3);
    if (!out) throw IoError("write failed: " + path);
}

namespace {

void require_complete_distinct(const Palette& palette) {
    for (size_t i = 0; i < palette.size(); ++i) {
        if (!palette[i]) throw ConfigError("palette is missing an outcome class entry");
        for (size_t k = 0; k < i; ++k) {
            if (*palette[k] == *palette[i]) {
                throw ConfigError("palette colors must be distinct per outcome class");
            }
        }
    }
}

std::string hex_color(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

}  // namespace

void write_image(const RegionMask& mask, const std::string& path, const Palette& palette,
                 const std::string& config_digest) {
    require_complete_distinct(palette);
    const GridSpec& spec = mask.spec;

    std::vector<std::uint8_t> bytes;
    bytes.reserve(mask.cells.size() * 3);
    for (const Cell& cell : mask.cells) {
        const Rgb c = *palette[static_cast<size_t>(cell.cls)];
        bytes.push_back(c.r);
        bytes.push_back(c.g);
        bytes.push_back(c.b);
    }
    write_ppm(path, spec.width, spec.height, bytes.data());

    nlohmann::ordered_json meta;
    meta["window"] = {{"xMin", spec.x_min}, {"xMax", spec.x_max},
                      {"yMin", spec.y_min}, {"yMax", spec.y_max}};
    meta["resolution"] = {{"width", spec.width}, {"height", spec.height}};
    meta["map"] = {{"a", spec.map.a}, {"b", spec.map.b}, {"c", spec.map.c},
                   {"d", spec.map.d}, {"label", spec.map.label()}};
    meta["rates"] = {{"kind", rate_kind_name(spec.rates.kind)}, {"m", spec.rates.m}};
    meta["budget"] = spec.budget;
    if (mask.julia_radius) meta["juliaRadius"] = *mask.julia_radius;
    meta["palette"] = {{"violated", hex_color(*palette[0])},
                       {"certifiedMember", hex_color(*palette[1])},
                       {"budgetExhausted", hex_color(*palette[2])},
                       {"rangeExceeded", hex_color(*palette[3])}};
    meta["version"] = kVersion;
    meta["configDigest"] = config_digest;

    const std::string sidecar = path + ".json";
    std::ofstream out(sidecar, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + sidecar);
    out << meta.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + sidecar);
}

}
