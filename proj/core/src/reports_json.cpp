#include <cmath>

#include <json.hpp>

#include "escweb/checks.hpp"
#include "escweb/components.hpp"
#include "escweb/lemma_suites.hpp"
#include "escweb/tracer.hpp"

namespace escweb {

namespace {

using ordered_json = nlohmann::ordered_json;

// Non-finite doubles have no JSON representation; keep them readable.
ordered_json jnum(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

ordered_json jcomplex(complexd z) { return ordered_json::array({jnum(z.real()), jnum(z.imag())}); }

ordered_json jmap(const ExpAffineMap& m) {
    return {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}, {"label", m.label()}};
}

ordered_json jrates(const RateSequence& r) {
    return {{"kind", rate_kind_name(r.kind)}, {"m", r.m}};
}

ordered_json joutcome(const OrbitOutcome& o) {
    ordered_json j{{"class", outcome_name(o.cls)}, {"step", o.step}};
    if (o.certificate) j["certificate"] = certificate_name(*o.certificate);
    return j;
}

ordered_json jgrid(const GridSpec& spec) {
    return {{"window",
             {{"xMin", spec.x_min}, {"xMax", spec.x_max}, {"yMin", spec.y_min},
              {"yMax", spec.y_max}}},
            {"resolution", {{"width", spec.width}, {"height", spec.height}}},
            {"map", jmap(spec.map)},
            {"rates", jrates(spec.rates)},
            {"budget", spec.budget}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json_string(const Lemma31Report& r) {
    ordered_json j{{"map", jmap(r.map)},
                   {"rates", jrates(r.rates)},
                   {"samplesPerSet", r.samples_per_set},
                   {"seed", r.seed},
                   {"certified", r.certified},
                   {"other", r.other},
                   {"allCertified", r.all_certified}};
    ordered_json rows = ordered_json::array();
    for (const Lemma31Row& row : r.rows) {
        rows.push_back({{"z", jcomplex(row.z)},
                        {"setFamily", row.set_family},
                        {"outcome", joutcome(row.outcome)}});
    }
    j["rows"] = std::move(rows);
    return dump(j);
}

std::string to_json_string(const ModulusBoundsReport& r) {
    return dump({{"map", jmap(r.map)},
                 {"samples", r.samples},
                 {"seed", r.seed},
                 {"violations", r.violations},
                 {"worstLowRatio", jnum(r.worst_low_ratio)},
                 {"worstHighRatio", jnum(r.worst_high_ratio)},
                 {"pass", r.pass}});
}

std::string to_json_string(const StripCoverageReport& r) {
    return dump({{"family", family_name(r.family)},
                 {"k", r.k},
                 {"m", r.m},
                 {"samples", r.samples},
                 {"seed", r.seed},
                 {"tested", r.tested},
                 {"skippedOnSeam", r.skipped_on_seam},
                 {"violations", r.violations},
                 {"pass", r.pass}});
}

std::string to_json_string(const std::vector<ComponentRecord>& components,
                           const GridSpec& spec) {
    ordered_json j{{"grid", jgrid(spec)}, {"componentsTotal", components.size()}};
    ordered_json arr = ordered_json::array();
    for (const ComponentRecord& c : components) {
        ordered_json loop = ordered_json::array();
        for (complexd p : c.boundary_loop) loop.push_back(jcomplex(p));
        arr.push_back({{"id", c.id},
                       {"pixelCount", c.pixel_count},
                       {"touchesBorder", c.touches_border},
                       {"bbox",
                        {{"i0", c.bbox.i0}, {"i1", c.bbox.i1}, {"j0", c.bbox.j0},
                         {"j1", c.bbox.j1}}},
                       {"diameter", jnum(c.diameter)},
                       {"boundaryLoop", std::move(loop)}});
    }
    j["components"] = std::move(arr);
    return dump(j);
}

std::string to_json_string(const Remark42Report& r) {
    return dump({{"componentsTotal", r.components_total},
                 {"componentsChecked", r.components_checked},
                 {"violatorIds", r.violator_ids},
                 {"largestCheckedDiameter", jnum(r.largest_checked_diameter)},
                 {"pass", r.pass}});
}

std::string to_json_string(const SpidersWebEvidence& r) {
    return dump({{"complementPixels", r.complement_pixels},
                 {"componentsTotal", r.components_total},
                 {"boundedComponents", r.bounded_components},
                 {"largestBoundedDiameter", jnum(r.largest_bounded_diameter)},
                 {"rangeExceededFraction", jnum(r.range_exceeded_fraction)},
                 {"hasBoundedComponent", r.has_bounded_component},
                 {"note", r.note}});
}

std::string to_json_string(const RateDominationReport& r) {
    ordered_json rows = ordered_json::array();
    for (const RateDominationRow& row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"aN", jnum(row.a_n)},
                        {"aNext", jnum(row.a_next)},
                        {"maxModulusAtAN", jnum(row.max_modulus_at_a_n)},
                        {"pass", row.pass}});
    }
    return dump({{"rows", std::move(rows)}, {"allPass", r.all_pass}});
}

std::string to_json_string(const CycleCheckReport& r) {
    ordered_json rows = ordered_json::array();
    for (const CycleCheckRow& row : r.rows) {
        rows.push_back({{"point", jcomplex(row.point)},
                        {"residual", jnum(row.residual)},
                        {"modulus", jnum(row.modulus)},
                        {"bound", jnum(row.bound)},
                        {"multiplierAbs", jnum(row.multiplier_abs)},
                        {"pass", row.pass}});
    }
    return dump({{"rows", std::move(rows)}, {"allPass", r.all_pass}, {"note", r.note}});
}

std::string to_json_string(const TraceResult& r) {
    ordered_json j{{"status", trace_status_name(r.status)},
                   {"note", r.note},
                   {"map", jmap(r.map)},
                   {"m", r.m},
                   {"j0", r.j0},
                   {"a0", r.a0},
                   {"K", r.K},
                   {"zeta", jcomplex(r.zeta)},
                   {"zetaParam", r.zeta_param}};
    ordered_json intervals = ordered_json::array();
    for (const auto& [s, t] : r.intervals.intervals) {
        intervals.push_back(ordered_json::array({s, t}));
    }
    j["intervals"] = std::move(intervals);

    ordered_json levels = ordered_json::array();
    for (const LevelRecord& lv : r.levels) {
        levels.push_back({{"level", lv.level},
                          {"aK", jnum(lv.a_k)},
                          {"stripRow", jnum(lv.strip_row)},
                          {"s", lv.s},
                          {"t", lv.t},
                          {"points", lv.points},
                          {"degenerate", lv.degenerate},
                          {"conditions",
                           {{"a", lv.conditions.a}, {"b", lv.conditions.b},
                            {"c", lv.conditions.c}, {"d", lv.conditions.d}}},
                          {"growthAbs", jnum(lv.growth_abs)},
                          {"growthTarget", jnum(lv.growth_target)},
                          {"growthPass", lv.growth_pass},
                          {"zetaDistance", jnum(lv.zeta_distance)}});
    }
    j["levels"] = std::move(levels);

    ordered_json pushes = ordered_json::array();
    for (const PushRecord& p : r.pushes) {
        pushes.push_back({{"sourceLevel", p.source_level},
                          {"eq41",
                           {{"lhs", jnum(p.eq41_lhs)}, {"rhs", jnum(p.eq41_rhs)},
                            {"pass", p.eq41_pass}, {"derived", p.eq41_derived}}},
                          {"modZ1", jnum(p.mod_z1)},
                          {"modZ2", jnum(p.mod_z2)},
                          {"eq42Ratio", jnum(p.eq42_ratio)},
                          {"eq42Pass", p.eq42_pass},
                          {"paperThreshold", jnum(p.paper_threshold)},
                          {"selectedMinModulus", jnum(p.selected_min_modulus)},
                          {"paperGateMet", p.paper_gate_met},
                          {"imagePoints", p.image_points},
                          {"maxSpacing", jnum(p.max_spacing)}});
    }
    j["pushes"] = std::move(pushes);

    if (r.continuation) {
        j["continuation"] = {{"certified", r.continuation->certified},
                             {"fromLevel", r.continuation->from_level},
                             {"toLevel", r.continuation->to_level},
                             {"basis", r.continuation->basis}};
    }
    j["allChecksPass"] = r.all_checks_pass;
    return dump(j);
}

}
