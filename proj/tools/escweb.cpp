// escweb: renders uniform-escape masks, verifies the quantitative lemmas and
// runs the curve-tracking construction from the command line.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "escweb/checks.hpp"
#include "escweb/components.hpp"
#include "escweb/errors.hpp"
#include "escweb/image.hpp"
#include "escweb/lemma_suites.hpp"
#include "escweb/maxmod.hpp"
#include "escweb/rasterize.hpp"
#include "escweb/tracer.hpp"
#include "escweb/version.hpp"

namespace {

using escweb::complexd;
using escweb::ExpAffineMap;
using escweb::Family;
using escweb::GridSpec;
using escweb::RateKind;
using escweb::RateSequence;
using escweb::RegionMask;
using ordered_json = nlohmann::ordered_json;

constexpr double kPi = escweb::kPi;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_of(const ordered_json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

ordered_json envelope(const std::string& command, const ordered_json& config,
                      ordered_json report) {
    return {{"version", escweb::kVersion},
            {"command", command},
            {"configDigest", digest_of(config)},
            {"config", config},
            {"report", std::move(report)}};
}

ordered_json jparse(const std::string& s) { return ordered_json::parse(s); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw escweb::IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw escweb::IoError("write failed: " + path);
}

// JSON goes to --out when given (summary on stdout), otherwise to stdout.
void emit(const std::string& outPath, const ordered_json& doc, const std::string& summary) {
    if (outPath.empty()) {
        std::fputs((doc.dump(2) + "\n").c_str(), stdout);
    } else {
        write_text(outPath, doc.dump(2) + "\n");
        std::fputs(summary.c_str(), stdout);
    }
}

struct MapOpts {
    std::string name = "fatou";
    double a = 1.0, b = 1.0, c = 1.0, d = -1.0;
};

struct RateOpts {
    std::string kind;  // empty -> family default
    int m = -1;        // -1 -> per-command family default
};

struct WindowOpts {
    double x_min = NAN, x_max = NAN, y_min = NAN, y_max = NAN;
    int width = 800, height = 800;
    int budget = escweb::kDefaultBudget;
};

void add_map_opts(CLI::App* sub, MapOpts& mo) {
    sub->add_option("--map", mo.name, "map selector")
        ->check(CLI::IsMember({"fatou", "bergweiler", "custom"}))
        ->capture_default_str();
    sub->add_option("--a", mo.a, "custom map coefficient a");
    sub->add_option("--b", mo.b, "custom map coefficient b");
    sub->add_option("--c", mo.c, "custom map coefficient c");
    sub->add_option("--d", mo.d, "custom map coefficient d");
}

void add_rate_opts(CLI::App* sub, RateOpts& ro) {
    sub->add_option("--rates", ro.kind, "rate kind (default: arithmetic for fatou-type, geometric otherwise)")
        ->check(CLI::IsMember({"arithmetic", "geometric"}));
    sub->add_option("--m", ro.m, "rate offset m (default: 6 fatou / 0 bergweiler)");
}

void add_window_opts(CLI::App* sub, WindowOpts& wo) {
    sub->add_option("--xmin", wo.x_min, "window left (default per family)");
    sub->add_option("--xmax", wo.x_max, "window right");
    sub->add_option("--ymin", wo.y_min, "window bottom");
    sub->add_option("--ymax", wo.y_max, "window top");
    sub->add_option("--width", wo.width, "pixels across")->capture_default_str();
    sub->add_option("--height", wo.height, "pixels down")->capture_default_str();
    sub->add_option("--budget", wo.budget, "iteration budget")->capture_default_str();
}

ExpAffineMap make_map(const MapOpts& mo) {
    if (mo.name == "fatou") return ExpAffineMap::fatou();
    if (mo.name == "bergweiler") return ExpAffineMap::bergweiler();
    return ExpAffineMap(mo.a, mo.b, mo.c, mo.d);
}

int default_m(const ExpAffineMap& map) {
    return map.family() == Family::BergweilerType ? 0 : 6;
}

RateSequence make_rates(const ExpAffineMap& map, const RateOpts& ro) {
    RateKind kind;
    if (ro.kind.empty()) {
        kind = map.family() == Family::BergweilerType ? RateKind::Geometric
                                                      : RateKind::Arithmetic;
    } else {
        kind = ro.kind == "arithmetic" ? RateKind::Arithmetic : RateKind::Geometric;
    }
    const int m = ro.m >= 0 ? ro.m : default_m(map);
    return RateSequence(kind, m);
}

void apply_window_defaults(const ExpAffineMap& map, WindowOpts& wo) {
    const bool berg = map.family() == Family::BergweilerType;
    if (std::isnan(wo.x_min)) wo.x_min = berg ? -40.0 : -8.0;
    if (std::isnan(wo.x_max)) wo.x_max = berg ? 40.0 : 8.0;
    if (std::isnan(wo.y_min)) wo.y_min = berg ? -16.0 * kPi : -12.0 * kPi;
    if (std::isnan(wo.y_max)) wo.y_max = berg ? 16.0 * kPi : 12.0 * kPi;
}

ordered_json jmap_cfg(const ExpAffineMap& m) {
    return {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}, {"label", m.label()}};
}

ordered_json jrates_cfg(const RateSequence& r) {
    return {{"kind", escweb::rate_kind_name(r.kind)}, {"m", r.m}};
}

ordered_json jgrid_cfg(const GridSpec& spec) {
    return {{"window",
             {{"xMin", spec.x_min}, {"xMax", spec.x_max}, {"yMin", spec.y_min},
              {"yMax", spec.y_max}}},
            {"resolution", {{"width", spec.width}, {"height", spec.height}}},
            {"map", jmap_cfg(spec.map)},
            {"rates", jrates_cfg(spec.rates)},
            {"budget", spec.budget}};
}

ordered_json components_report(const RegionMask& mask,
                               const std::vector<escweb::ComponentRecord>& comps) {
    ordered_json rep;
    rep["evidence"] = jparse(escweb::to_json_string(escweb::spiders_web_evidence(mask)));
    rep["components"] = jparse(escweb::to_json_string(comps, mask.spec));
    return rep;
}

int run_render(const GridSpec& spec, bool supersample, int workers, const std::string& out) {
    ordered_json cfg = jgrid_cfg(spec);
    cfg["supersample"] = supersample;
    const std::string digest = digest_of(cfg);

    const RegionMask mask = supersample ? escweb::rasterize_supersampled(spec, workers)
                                        : escweb::rasterize(spec, workers);
    escweb::write_image(mask, out, escweb::default_palette(), digest);

    const auto comps = escweb::label_components(mask);
    const auto evidence = escweb::spiders_web_evidence(mask);
    write_text(out + ".components.json",
               envelope("render", cfg, components_report(mask, comps)).dump(2) + "\n");

    std::printf("wrote %s, %s.json, %s.components.json\n", out.c_str(), out.c_str(),
                out.c_str());
    std::printf("components: %d, bounded: %d, largest bounded diameter: %g\n",
                evidence.components_total, evidence.bounded_components,
                evidence.largest_bounded_diameter);
    std::printf("%s\n", evidence.note.c_str());
    return 0;
}

int run_julia(const GridSpec& spec, double radius, int workers, const std::string& out) {
    ordered_json cfg = jgrid_cfg(spec);
    cfg["juliaRadius"] = radius;
    const RegionMask mask = escweb::render_julia_approx(spec, radius, workers);
    escweb::write_image(mask, out, escweb::default_palette(), digest_of(cfg));
    std::printf("wrote %s and %s.json (fast escape, radius %g)\n", out.c_str(), out.c_str(),
                radius);
    return 0;
}

int run_classify(const GridSpec& spec, double re, double im, const std::string& out) {
    ordered_json cfg{{"map", jmap_cfg(spec.map)},
                     {"rates", jrates_cfg(spec.rates)},
                     {"budget", spec.budget},
                     {"point", {re, im}}};
    const auto outcome = escweb::classify_point(spec.map, spec.rates, complexd(re, im),
                                                spec.budget);
    ordered_json rep{{"class", escweb::outcome_name(outcome.cls)}, {"step", outcome.step}};
    if (outcome.certificate) rep["certificate"] = escweb::certificate_name(*outcome.certificate);
    char summary[128];
    std::snprintf(summary, sizeof summary, "%s at step %d\n",
                  escweb::outcome_name(outcome.cls), outcome.step);
    emit(out, envelope("classify", cfg, rep), summary);
    return 0;
}

int run_components(const GridSpec& spec, int workers, const std::string& out) {
    ordered_json cfg = jgrid_cfg(spec);
    const RegionMask mask = escweb::rasterize(spec, workers);
    const auto comps = escweb::label_components(mask);
    ordered_json rep = components_report(mask, comps);

    bool pass = true;
    if (spec.map.family() == Family::FatouType && spec.rates.m >= 1) {
        const escweb::RectR rect0{Family::FatouType, spec.rates.m, 0};
        const auto remark = escweb::remark42_check(comps, rect0, spec);
        rep["remark42"] = jparse(escweb::to_json_string(remark));
        pass = remark.pass;
    }

    const auto evidence = escweb::spiders_web_evidence(mask);
    char summary[256];
    std::snprintf(summary, sizeof summary,
                  "components: %d, bounded: %d, largest bounded diameter: %g\n%s\n",
                  evidence.components_total, evidence.bounded_components,
                  evidence.largest_bounded_diameter, evidence.note.c_str());
    emit(out, envelope("components", cfg, std::move(rep)), summary);
    return pass ? 0 : 1;
}

int run_maxmod(const ExpAffineMap& map, double radius, int samples, const std::string& out) {
    ordered_json cfg{{"map", jmap_cfg(map)}, {"radius", radius}, {"samples", samples}};
    const auto est = escweb::max_modulus(map, radius, samples);
    ordered_json rep{{"r", est.r}, {"value", est.value}, {"theta", est.theta}};
    char summary[128];
    std::snprintf(summary, sizeof summary, "M(%g) >= %.17g at theta = %.17g\n", est.r,
                  est.value, est.theta);
    emit(out, envelope("maxmod", cfg, rep), summary);
    return 0;
}

int run_trace(const ExpAffineMap& map, int m, int j0, double a0, int K,
              const std::string& out) {
    ordered_json cfg{{"map", jmap_cfg(map)}, {"m", m}, {"j0", j0}, {"a0", a0}, {"levels", K}};
    const auto result = escweb::trace(map, m, j0, a0, K);
    char summary[256];
    std::snprintf(summary, sizeof summary,
                  "trace %s: %zu levels, zeta = (%.17g, %.17g), all checks %s\n",
                  escweb::trace_status_name(result.status), result.levels.size(),
                  result.zeta.real(), result.zeta.imag(),
                  result.all_checks_pass ? "pass" : "FAIL");
    emit(out, envelope("trace", cfg, jparse(escweb::to_json_string(result))), summary);

    const bool reached = result.status == escweb::TraceStatus::Completed ||
                         (result.continuation && result.continuation->certified);
    return result.all_checks_pass && reached ? 0 : 1;
}

struct VerifyOpts {
    std::string lemma = "all";
    long long samples = -1;
    int k = 0;
    int levels = 50;
    int budget = escweb::kDefaultBudget;
    std::uint64_t seed = 0;
};

int run_verify(const ExpAffineMap& map, const RateSequence& rates, const VerifyOpts& vo,
               const std::string& out) {
    ordered_json cfg{{"map", jmap_cfg(map)},      {"rates", jrates_cfg(rates)},
                     {"lemma", vo.lemma},         {"samples", vo.samples},
                     {"k", vo.k},                 {"levels", vo.levels},
                     {"budget", vo.budget},       {"seed", vo.seed}};
    const Family fam = map.family();
    ordered_json rep;
    std::vector<std::string> failures;

    auto want = [&](std::initializer_list<const char*> names) {
        if (vo.lemma == "all") return true;
        for (const char* n : names) {
            if (vo.lemma == n) return true;
        }
        return false;
    };

    if (want({"3.1", "6.2", "membership"})) {
        const long long n = vo.samples > 0 ? vo.samples : 100;
        const auto r = escweb::verify_lemma31(map, rates, static_cast<int>(n), vo.budget,
                                              vo.seed);
        rep["membership"] = jparse(escweb::to_json_string(r));
        rep["membership"].erase("rows");  // bulky; the verdict and counts suffice
        if (!r.all_certified) failures.push_back("membership");
    }
    if (want({"3.2", "6.3", "strips"})) {
        const long long n = vo.samples > 0 ? vo.samples : 100000;
        const auto r = escweb::strip_coverage_check(fam, vo.k, rates.m, n, vo.seed);
        rep["strips"] = jparse(escweb::to_json_string(r));
        if (!r.pass) failures.push_back("strips");
    }
    if (want({"3.3", "6.4", "modulus"})) {
        const long long n = vo.samples > 0 ? vo.samples : 1000000;
        const auto r = escweb::verify_modulus_bounds(map, n, vo.seed);
        rep["modulus"] = jparse(escweb::to_json_string(r));
        if (!r.pass) failures.push_back("modulus");
    }
    if (want({"eq3.1", "rect"})) {
        const auto rows = escweb::rect_in_disc_check(fam, 100, 100);
        ordered_json bad = ordered_json::array();
        for (const auto& row : rows) {
            if (!row.pass) {
                bad.push_back({{"m", row.m}, {"k", row.k}, {"corner", row.corner},
                               {"radius", row.radius}});
            }
        }
        rep["rect"] = {{"rows", rows.size()}, {"failures", bad}, {"pass", bad.empty()}};
        if (!bad.empty()) failures.push_back("rect");
    }
    if (want({"rates", "domination"})) {
        const auto r = escweb::rate_domination_check(map, rates, vo.levels);
        rep["rateDomination"] = jparse(escweb::to_json_string(r));
        if (!r.all_pass) failures.push_back("rateDomination");
    }
    if (want({"cycle"})) {
        const auto r = escweb::cycle_in_disc_check(map, rates);
        rep["cycle"] = jparse(escweb::to_json_string(r));
        if (!r.all_pass) failures.push_back("cycle");
    }

    if (rep.empty()) throw escweb::ConfigError("unknown lemma selector: " + vo.lemma);
    rep["failures"] = failures;
    rep["pass"] = failures.empty();

    std::string summary = failures.empty() ? "verify: all checks pass\n" : "verify: FAIL:";
    if (!failures.empty()) {
        for (const auto& f : failures) summary += " " + f;
        summary += "\n";
    }
    emit(out, envelope("verify", cfg, std::move(rep)), summary);
    return failures.empty() ? 0 : 1;
}

int print_defaults() {
    const auto fatouTrace = escweb::default_trace_params(Family::FatouType, 1);
    const auto bergTrace = escweb::default_trace_params(Family::BergweilerType, 0);
    ordered_json j{
        {"map", "fatou"},
        {"rates", {{"fatou", "arithmetic"}, {"bergweiler", "geometric"}}},
        {"m", {{"fatou", 6}, {"bergweiler", 0}, {"trace", {{"fatou", 1}, {"bergweiler", 0}}}}},
        {"window",
         {{"fatou", {{"x", {-8.0, 8.0}}, {"y", {-12.0 * kPi, 12.0 * kPi}}}},
          {"bergweiler", {{"x", {-40.0, 40.0}}, {"y", {-16.0 * kPi, 16.0 * kPi}}}}}},
        {"resolution", {800, 800}},
        {"budget", escweb::kDefaultBudget},
        {"seed", 0},
        {"juliaRadius", 1.0},
        {"maxmodSamples", 4096},
        {"trace",
         {{"fatou m=1", {{"j0", fatouTrace.j0}, {"a0", fatouTrace.a0}, {"K", fatouTrace.K}}},
          {"bergweiler m=0",
           {{"j0", bergTrace.j0}, {"a0", bergTrace.a0}, {"K", bergTrace.K}}}}},
        {"verifySamples",
         {{"membership", 100}, {"strips", 100000}, {"modulus", 1000000}, {"rateLevels", 50}}}};
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform-escape sets of exponential-affine maps: rendering, "
                 "verification suites and the curve-tracking construction"};
    app.require_subcommand(0, 1);
    bool printDefaults = false;
    app.add_flag("--print-defaults", printDefaults, "dump default parameters as JSON");

    MapOpts mo;
    RateOpts ro;
    WindowOpts wo;
    std::string out;
    bool supersample = false;
    int workers = 0;
    double radius = 1.0;
    int mmSamples = 4096;
    double ptRe = 0.0, ptIm = 0.0;
    int trJ0 = INT_MIN, trK = 0;
    double trA0 = NAN;
    VerifyOpts vo;

    CLI::App* render = app.add_subcommand("render", "classify a window and write the mask");
    add_map_opts(render, mo);
    add_rate_opts(render, ro);
    add_window_opts(render, wo);
    render->add_flag("--supersample", supersample, "2x2 subsample majority vote");
    render->add_option("--workers", workers, "row workers (0 = auto)");
    render->add_option("-o,--out", out, "output PPM path");

    CLI::App* julia = app.add_subcommand("julia", "fast-escape mask (Julia approximation)");
    add_map_opts(julia, mo);
    add_window_opts(julia, wo);
    julia->add_option("--radius", radius, "base radius R")->capture_default_str();
    julia->add_option("--workers", workers, "row workers (0 = auto)");
    julia->add_option("-o,--out", out, "output PPM path");

    CLI::App* classify = app.add_subcommand("classify", "classify a single point");
    add_map_opts(classify, mo);
    add_rate_opts(classify, ro);
    classify->add_option("--re", ptRe, "point real part")->required();
    classify->add_option("--im", ptIm, "point imaginary part")->required();
    classify->add_option("--budget", wo.budget, "iteration budget")->capture_default_str();
    classify->add_option("-o,--out", out, "report path (default stdout)");

    CLI::App* components = app.add_subcommand("components",
                                              "render and analyze complement components");
    add_map_opts(components, mo);
    add_rate_opts(components, ro);
    add_window_opts(components, wo);
    components->add_option("--workers", workers, "row workers (0 = auto)");
    components->add_option("-o,--out", out, "report path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run lemma verification suites");
    add_map_opts(verify, mo);
    add_rate_opts(verify, ro);
    verify->add_option("--lemma", vo.lemma,
                       "3.1/6.2 membership, 3.2/6.3 strips, 3.3/6.4 modulus, eq3.1 rect, "
                       "rates, cycle, all")
        ->capture_default_str();
    verify->add_option("--samples", vo.samples, "sample count (-1 = per-suite default)");
    verify->add_option("--k", vo.k, "strip level for the coverage check")
        ->capture_default_str();
    verify->add_option("--levels", vo.levels, "N for the rate domination check")
        ->capture_default_str();
    verify->add_option("--budget", vo.budget, "iteration budget")->capture_default_str();
    verify->add_option("--seed", vo.seed, "sampling seed")->capture_default_str();
    verify->add_option("-o,--out", out, "report path (default stdout)");

    CLI::App* traceCmd = app.add_subcommand("trace", "run the curve-tracking construction");
    add_map_opts(traceCmd, mo);
    traceCmd->add_option("--m", ro.m, "rate offset m (default: 1 fatou / 0 bergweiler)");
    traceCmd->add_option("--j0", trJ0, "initial strip row (default per family)");
    traceCmd->add_option("--a0", trA0, "initial anchor real part (default per family)");
    traceCmd->add_option("--levels", trK, "number of pushes K (default per family)");
    traceCmd->add_option("-o,--out", out, "transcript path (default stdout)");

    CLI::App* maxmod = app.add_subcommand("maxmod", "maximum modulus estimate M(r)");
    add_map_opts(maxmod, mo);
    maxmod->add_option("--radius", radius, "circle radius")->required();
    maxmod->add_option("--samples", mmSamples, "equispaced angles")->capture_default_str();
    maxmod->add_option("-o,--out", out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (printDefaults) return print_defaults();
        if (render->parsed()) {
            const ExpAffineMap map = make_map(mo);
            apply_window_defaults(map, wo);
            const GridSpec spec(wo.x_min, wo.x_max, wo.y_min, wo.y_max, wo.width, wo.height,
                                map, make_rates(map, ro), wo.budget);
            return run_render(spec, supersample, workers,
                              out.empty() ? "escweb_render.ppm" : out);
        }
        if (julia->parsed()) {
            const ExpAffineMap map = make_map(mo);
            apply_window_defaults(map, wo);
            const GridSpec spec(wo.x_min, wo.x_max, wo.y_min, wo.y_max, wo.width, wo.height,
                                map, make_rates(map, ro), wo.budget);
            return run_julia(spec, radius, workers, out.empty() ? "escweb_julia.ppm" : out);
        }
        if (classify->parsed()) {
            const ExpAffineMap map = make_map(mo);
            apply_window_defaults(map, wo);
            const GridSpec spec(wo.x_min, wo.x_max, wo.y_min, wo.y_max, 1, 1, map,
                                make_rates(map, ro), wo.budget);
            return run_classify(spec, ptRe, ptIm, out);
        }
        if (components->parsed()) {
            const ExpAffineMap map = make_map(mo);
            apply_window_defaults(map, wo);
            const GridSpec spec(wo.x_min, wo.x_max, wo.y_min, wo.y_max, wo.width, wo.height,
                                map, make_rates(map, ro), wo.budget);
            return run_components(spec, workers, out);
        }
        if (verify->parsed()) {
            const ExpAffineMap map = make_map(mo);
            return run_verify(map, make_rates(map, ro), vo, out);
        }
        if (traceCmd->parsed()) {
            const ExpAffineMap map = make_map(mo);
            const Family fam = map.family();
            const int m = ro.m >= 0 ? ro.m
                                    : (fam == Family::BergweilerType ? 0 : 1);
            const auto defs = escweb::default_trace_params(fam, m);
            const int j0 = trJ0 == INT_MIN ? defs.j0 : trJ0;
            const double a0 = std::isnan(trA0) ? defs.a0 : trA0;
            const int K = trK > 0 ? trK : defs.K;
            return run_trace(map, m, j0, a0, K, out);
        }
        if (maxmod->parsed()) {
            return run_maxmod(make_map(mo), radius, mmSamples, out);
        }
        std::fputs(app.help().c_str(), stdout);
        return 0;
    } catch (const escweb::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const escweb::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
