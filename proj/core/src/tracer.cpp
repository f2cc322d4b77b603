#include "escweb/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "escweb/errors.hpp"
#include "escweb/geometry.hpp"

namespace escweb {

const char* trace_status_name(TraceStatus s) {
    switch (s) {
        case TraceStatus::Completed: return "Completed";
        case TraceStatus::RangeError: return "RangeError";
        default: return "SelectionFailure";
    }
}

namespace {

constexpr double kRelTol = 1e-6;
constexpr int kPointCap = 1 << 20;

complexd lerp(complexd a, complexd b, double t) { return a + t * (b - a); }

// f^level(gamma0(t)), the single source of truth for every curve sample.
complexd chain_point(const ExpAffineMap& map, const TracedCurve& curve, double t, int level) {
    complexd p = lerp(curve.base_start, curve.base_end, t);
    for (int i = 0; i < level; ++i) {
        if (evaluation_overflows(map, p)) {
            throw RangeError("orbit leaves the binary64 range during the trace");
        }
        try {
            p = evaluate(map, p);
        } catch (const OverflowError&) {
            throw RangeError("orbit leaves the binary64 range during the trace");
        }
    }
    return p;
}

bool is_fatou(const ExpAffineMap& map) {
    const Family fam = map.family();
    if (fam == Family::Other) {
        throw UnsupportedMapError("the tracer supports the two studied families only");
    }
    return fam == Family::FatouType;
}

double row_of(complexd z) { return std::floor(z.imag() / kTwoPi); }

double point_segment_dist(complexd p, complexd a, complexd b) {
    const complexd ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double u = std::clamp(
        ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2, 0.0, 1.0);
    return std::abs(p - (a + u * ab));
}

double dist_to_polyline(complexd p, const std::vector<complexd>& pts) {
    if (pts.size() == 1) return std::abs(p - pts.front());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        best = std::min(best, point_segment_dist(p, pts[i], pts[i + 1]));
    }
    return best;
}

// Log-space induction: with |a_{l+1}| >= e^{|a_l|}/4 - 1 from the modulus
// floor, one saturating pass over the remaining levels settles every gate.
ContinuationCertificate certify_continuation(bool fat, int m, int fromLevel, int K,
                                             double aLast) {
    ContinuationCertificate cert;
    cert.from_level = fromLevel;
    cert.to_level = K;
    double A = std::abs(aLast);
    bool ok = true;
    for (int l = fromLevel; l <= K && ok; ++l) {
        const double gateRhs = fat ? 3.0 * (m + l) * kPi : std::exp2(l + 3);
        const double aBound = fat ? 3.0 * (m + l + 1) : std::exp2(l + 2);
        const bool saturated = A >= 710.0;
        const double floorNext =
            saturated ? std::numeric_limits<double>::infinity() : std::exp(A) / 4.0 - 1.0;
        ok = (saturated || std::exp(A) / 2.0 > gateRhs) && floorNext > aBound;
        A = floorNext;
    }
    cert.certified = ok;
    cert.basis = fat ? "modulus floor e^{|a|}/2; |a_{l+1}| >= e^{|a_l|}/4 - 1 clears "
                       "3(m+l+1) and 3(m+l)pi at every remaining level"
                     : "modulus floor e^{a}/2; a_{l+1} >= e^{a_l}/4 - 1 clears "
                       "2^{l+2} and 2^{l+3} at every remaining level";
    return cert;
}

ConditionChecks check_conditions(const ExpAffineMap& map, const TracedCurve& curve, int m) {
    const bool fat = is_fatou(map);
    ConditionChecks cc;
    const double a = curve.a_k;
    const double slack = kRelTol * std::max(1.0, std::abs(a));
    const double far = fat ? a - 10.0 : a + 10.0;
    const double lo = std::min(a, far);
    const double hi = std::max(a, far);

    // (a): anchor endpoint sits at a_k, which clears the level bound.
    const double bound = fat ? -3.0 * (m + curve.level + 1) : std::exp2(curve.level + 2);
    const bool anchorBound = fat ? a < bound : a > bound;
    const double reFront = curve.points.front().real();
    const double reBack = curve.points.back().real();
    const bool frontIsAnchor = std::abs(reFront - a) <= std::abs(reBack - a);
    const double reAnchor = frontIsAnchor ? reFront : reBack;
    const double reFar = frontIsAnchor ? reBack : reFront;
    cc.a = anchorBound && std::abs(reAnchor - a) <= slack;

    // (b): the other endpoint sits ten units toward the growth side.
    cc.b = std::abs(reFar - far) <= slack;

    // (c): window and a single half-strip. Rows are compared as doubles so
    // astronomically high rows (late levels) stay well defined.
    cc.c = true;
    const double row0 = row_of(curve.points.front());
    const double stripBound = fat ? static_cast<double>(m + curve.level)
                                  : std::exp2(curve.level + 2);
    const double centralRows = fat ? static_cast<double>(m + curve.level)
                                   : std::exp2(curve.level);
    for (const complexd& z : curve.points) {
        if (z.real() < lo - slack || z.real() > hi + slack) cc.c = false;
        if (row_of(z) != row0) cc.c = false;
        const bool central = -centralRows <= row0 && row0 < centralRows;
        if (fat) {
            const double cutoff = central ? -stripBound : stripBound;
            if (!(z.real() <= cutoff)) cc.c = false;
        } else {
            const double cutoff = central ? stripBound : -stripBound;
            if (!(z.real() >= cutoff)) cc.c = false;
        }
    }

    // (d): the half-modulus cone.
    cc.d = true;
    for (const complexd& z : curve.points) {
        const double side = fat ? -z.real() : z.real();
        if (!(side >= std::abs(z) / 2.0)) cc.d = false;
    }
    return cc;
}

}  // namespace

TracedCurve construct_initial_curve(const ExpAffineMap& map, int m, int j0, double a0,
                                    double step) {
    const bool fat = is_fatou(map);
    if (step <= 0.0) throw PreconditionError("sample step must be positive");
    if (fat && m < 1) throw PreconditionError("fatou-type traces require m >= 1");
    if (!fat && m < 0) throw PreconditionError("bergweiler-type traces require m >= 0");
    if (fat && !(a0 < -3.0 * (m + 1))) {
        throw PreconditionError("condition (a): a0 < -3(m+1) fails");
    }
    if (!fat && !(a0 > 4.0)) throw PreconditionError("condition (a): a0 > 4 fails");

    const double ymid = (2.0 * j0 + 1.0) * kPi;
    TracedCurve c;
    c.level = 0;
    c.a_k = a0;
    c.base_start = fat ? complexd(a0 - 10.0, ymid) : complexd(a0 + 10.0, ymid);  // z_{0,2}
    c.base_end = complexd(a0, ymid);                                             // z_{0,1}
    c.strip_row = std::floor(ymid / kTwoPi);

    const int n = std::max(1, static_cast<int>(std::ceil(10.0 / step)));
    c.points.reserve(n + 1);
    c.params.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const complexd z = lerp(c.base_start, c.base_end, t);
        const double side = fat ? -z.real() : z.real();
        if (!(side >= std::abs(z) / 2.0)) {
            throw PreconditionError("condition (d): the midline segment leaves the cone");
        }
        c.points.push_back(z);
        c.params.push_back(t);
    }
    return c;
}

TracedCurve push_curve(const ExpAffineMap& map, const TracedCurve& curve, double max_spacing) {
    if (curve.points.empty()) throw PreconditionError("cannot push an empty curve");
    TracedCurve img;
    img.level = curve.level + 1;
    img.a_k = curve.a_k;  // source anchor, consumed by the selection gate
    img.base_start = curve.base_start;
    img.base_end = curve.base_end;

    std::vector<complexd> ws;
    ws.reserve(curve.params.size());
    for (double t : curve.params) ws.push_back(chain_point(map, curve, t, img.level));

    if (curve.params.size() == 1) {  // degenerate passthrough
        img.points = ws;
        img.params = curve.params;
        img.strip_row = row_of(ws.front());
        return img;
    }

    const double span = std::abs(ws.back() - ws.front());
    const double maxSp = max_spacing > 0.0 ? max_spacing : 0.1 * span;

    img.params.push_back(curve.params.front());
    img.points.push_back(ws.front());
    std::function<void(double, complexd, double, complexd)> refine =
        [&](double tL, complexd wL, double tR, complexd wR) {
            if (maxSp <= 0.0 || std::abs(wR - wL) <= maxSp) {
                if (static_cast<int>(img.points.size()) >= kPointCap) {
                    throw SubdivisionCapExceeded("image refinement exceeded the point cap");
                }
                img.params.push_back(tR);
                img.points.push_back(wR);
                return;
            }
            const double tm = 0.5 * (tL + tR);
            if (tm == tL || tm == tR) {  // parameter resolution floor
                img.params.push_back(tR);
                img.points.push_back(wR);
                return;
            }
            const complexd wm = chain_point(map, curve, tm, img.level);
            refine(tL, wL, tm, wm);
            refine(tm, wm, tR, wR);
        };
    for (size_t i = 0; i + 1 < ws.size(); ++i) {
        refine(curve.params[i], ws[i], curve.params[i + 1], ws[i + 1]);
    }
    img.strip_row = row_of(img.points.front());
    return img;
}

TracedCurve select_subcurve(const ExpAffineMap& map, const TracedCurve& image, int m) {
    const bool fat = is_fatou(map);
    if (image.level < 1) throw PreconditionError("selection expects a pushed image curve");
    const size_t n = image.points.size();

    // Growth gate: the guaranteed image modulus floor must clear the next
    // rectangle's enclosing disc. The bergweiler-type radius is derived.
    const double gateLhs = std::exp(fat ? -image.a_k : image.a_k) / 2.0;
    const double gateRhs = fat ? 3.0 * (m + image.level) * kPi : std::exp2(image.level + 3);
    if (!(gateLhs > gateRhs)) {
        throw SelectionFailure("growth gate: image modulus floor does not clear the rectangle");
    }

    std::vector<size_t> qualifying;
    for (size_t i = 0; i < n; ++i) {
        const complexd z = image.points[i];
        const double side = fat ? -z.real() : z.real();
        if (side >= std::abs(z) / 2.0) qualifying.push_back(i);
    }
    if (qualifying.empty()) {
        throw SelectionFailure("no image point satisfies the cone condition (d)");
    }

    size_t best = qualifying.front();
    for (size_t i : qualifying) {
        const double r = image.points[i].real();
        const double rb = image.points[best].real();
        if (fat ? r > rb : r < rb) best = i;
    }
    const double aNext = fat ? image.points[best].real() - 1.0 : image.points[best].real() + 1.0;

    const bool aOk = fat ? aNext < -3.0 * (m + image.level + 1)
                         : aNext > std::exp2(image.level + 2);
    if (!aOk) {
        throw SelectionFailure("condition (a) is unreachable at the achieved real parts");
    }

    const double farRe = fat ? aNext - 10.0 : aNext + 10.0;
    const double lo = std::min(aNext, farRe);
    const double hi = std::max(aNext, farRe);

    auto re_at = [&](double t) { return chain_point(map, image, t, image.level).real(); };

    // Parametric bisection for Re = target inside a bracketing sample pair;
    // returns the endpoint whose point lies inside the selection window.
    auto bisect = [&](double t0, double t1, double target) {
        double f0 = re_at(t0) - target;
        while (true) {
            const double tm = 0.5 * (t0 + t1);
            if (tm == t0 || tm == t1) break;
            const double fm = re_at(tm) - target;
            if ((fm > 0.0) == (f0 > 0.0)) {
                t0 = tm;
                f0 = fm;
            } else {
                t1 = tm;
            }
        }
        const double r0 = re_at(t0);
        if (r0 >= lo && r0 <= hi) return t0;
        return t1;
    };

    // Walk samples outward from `from` until Re - target changes sign.
    auto find_crossing = [&](size_t from, int dir,
                             double target) -> std::optional<std::pair<double, double>> {
        double side0 = image.points[from].real() - target;
        size_t i = from;
        while (true) {
            if (dir < 0 ? i == 0 : i + 1 == n) return std::nullopt;
            const size_t j = dir < 0 ? i - 1 : i + 1;
            const double side1 = image.points[j].real() - target;
            if ((side1 > 0.0) != (side0 > 0.0)) {
                const double tIn = image.params[i];
                const double tOut = image.params[j];
                return std::make_pair(std::min(tIn, tOut), std::max(tIn, tOut));
            }
            i = j;
            side0 = side1;
        }
    };

    TracedCurve sub;
    sub.level = image.level;
    sub.a_k = aNext;
    sub.base_start = image.base_start;
    sub.base_end = image.base_end;

    if (farRe == aNext) {
        // The ten-unit window is below one ulp of the anchor, so the one-unit
        // margin was absorbed too and the extreme qualifying sample is itself
        // the anchor: the selected curve degenerates to that single point.
        sub.params = {image.params[best]};
        sub.points = {image.points[best]};
        sub.strip_row = row_of(sub.points.front());
        return sub;
    }

    for (int dir : {-1, +1}) {
        const auto nearBr = find_crossing(best, dir, aNext);
        if (!nearBr) continue;
        const auto farBr = find_crossing(best, dir, farRe);
        if (!farBr) continue;
        const double tNear = bisect(nearBr->first, nearBr->second, aNext);
        const double tFar = bisect(farBr->first, farBr->second, farRe);
        const double tA = std::min(tNear, tFar);
        const double tB = std::max(tNear, tFar);

        sub.params.push_back(tA);
        for (size_t i = 0; i < n; ++i) {
            if (image.params[i] > tA && image.params[i] < tB) {
                sub.params.push_back(image.params[i]);
            }
        }
        sub.params.push_back(tB);
        sub.points.reserve(sub.params.size());
        for (double t : sub.params) sub.points.push_back(chain_point(map, image, t, image.level));
        sub.strip_row = row_of(sub.points.front());
        return sub;
    }
    throw SelectionFailure("no crossing pair brackets the selection window");
}

TraceDefaults default_trace_params(Family family, int m) {
    if (family == Family::FatouType) {
        const int j0 = (3 * m) / 2;  // makes |gamma0| exceed the level-0 growth target
        const double a0 =
            -(std::max(3.0 * (m + 1), (2.0 * j0 + 1.0) * kPi / std::sqrt(3.0)) + 0.5);
        // Two pushes stay inside binary64 only for m = 1 (|a_1| < 709 needs
        // e^{|a_0|} and a_0 only just clears -6); larger m caps at one.
        return {j0, a0, m == 1 ? 2 : 1};
    }
    if (family == Family::BergweilerType) return {0, 16.0, 1};
    throw UnsupportedMapError("the tracer supports the two studied families only");
}

TraceResult trace(const ExpAffineMap& map, int m, int j0, double a0, int K) {
    const bool fat = is_fatou(map);
    if (K < 1) throw PreconditionError("need at least one level");

    TraceResult res{TraceStatus::Completed, {}, map, m, j0, a0, K, {}, 0.0, {}, {}, {}, {},
                    false};
    std::vector<TracedCurve> curves;
    curves.push_back(construct_initial_curve(map, m, j0, a0));
    res.intervals.intervals.emplace_back(0.0, 1.0);

    for (int k = 0; k < K; ++k) {
        TracedCurve image{
            {}, {}, 0, 0.0, 0.0, curves.back().base_start, curves.back().base_end};
        try {
            image = push_curve(map, curves.back());
        } catch (const RangeError& e) {
            res.status = TraceStatus::RangeError;
            res.note = std::string("level ") + std::to_string(k + 1) + ": " + e.what();
            break;
        } catch (const SubdivisionCapExceeded& e) {
            res.status = TraceStatus::RangeError;
            res.note = std::string("level ") + std::to_string(k + 1) + ": " + e.what();
            break;
        }

        PushRecord pr;
        pr.source_level = k;
        pr.eq41_lhs = std::exp(fat ? -curves.back().a_k : curves.back().a_k) / 2.0;
        pr.eq41_rhs = fat ? 3.0 * (m + k + 1) * kPi : std::exp2(k + 4);
        pr.eq41_pass = pr.eq41_lhs > pr.eq41_rhs;
        pr.eq41_derived = !fat;
        const double aSrc = curves.back().a_k;
        const bool frontIsAnchor = std::abs(curves.back().points.front().real() - aSrc) <=
                                   std::abs(curves.back().points.back().real() - aSrc);
        pr.mod_z1 = std::abs(frontIsAnchor ? image.points.front() : image.points.back());
        pr.mod_z2 = std::abs(frontIsAnchor ? image.points.back() : image.points.front());
        pr.eq42_ratio = pr.mod_z2 / pr.mod_z1;
        pr.eq42_pass = pr.eq42_ratio >= std::exp(10.0) / 4.0;
        pr.paper_threshold = std::exp(10.0) / 8.0 * pr.mod_z1;
        pr.image_points = static_cast<int>(image.points.size());
        pr.max_spacing = 0.1 * std::abs(image.points.back() - image.points.front());

        TracedCurve next{{}, {}, 0, 0.0, 0.0, image.base_start, image.base_end};
        try {
            next = select_subcurve(map, image, m);
        } catch (const SelectionFailure& e) {
            res.status = TraceStatus::SelectionFailure;
            res.note = std::string("level ") + std::to_string(k + 1) + ": " + e.what();
            res.pushes.push_back(pr);
            break;
        } catch (const RangeError& e) {
            res.status = TraceStatus::RangeError;
            res.note = std::string("level ") + std::to_string(k + 1) + ": " + e.what();
            res.pushes.push_back(pr);
            break;
        }

        double minMod = std::numeric_limits<double>::infinity();
        for (const complexd& w : next.points) minMod = std::min(minMod, std::abs(w));
        pr.selected_min_modulus = minMod;
        pr.paper_gate_met = minMod >= pr.paper_threshold;
        res.pushes.push_back(pr);

        curves.push_back(next);
        res.intervals.intervals.emplace_back(next.params.front(), next.params.back());
    }

    if (res.status == TraceStatus::RangeError) {
        res.continuation = certify_continuation(fat, m, static_cast<int>(curves.size()), K,
                                                curves.back().a_k);
        if (res.continuation->certified) res.note += "; certified continuable";
    }

    const auto lastInterval = res.intervals.intervals.back();
    res.zeta_param = 0.5 * (lastInterval.first + lastInterval.second);
    res.zeta = lerp(curves.front().base_start, curves.front().base_end, res.zeta_param);

    bool pass = true;
    for (size_t k = 0; k < curves.size(); ++k) {
        const TracedCurve& c = curves[k];
        LevelRecord rec;
        rec.level = c.level;
        rec.a_k = c.a_k;
        rec.strip_row = c.strip_row;
        rec.s = c.params.front();
        rec.t = c.params.back();
        rec.points = static_cast<int>(c.points.size());
        rec.degenerate = c.points.size() == 1;
        rec.conditions = check_conditions(map, c, m);
        const complexd fk = chain_point(map, c, res.zeta_param, c.level);
        rec.growth_abs = std::abs(fk);
        rec.growth_target = fat ? 3.0 * (c.level + m) * kPi : std::exp2(c.level + 4);
        rec.growth_pass = rec.growth_abs > rec.growth_target;
        rec.zeta_distance = dist_to_polyline(fk, c.points);
        pass = pass && rec.conditions.all() && rec.growth_pass;
        res.levels.push_back(rec);
    }
    for (const PushRecord& pr : res.pushes) pass = pass && pr.eq41_pass && pr.eq42_pass;
    for (size_t k = 1; k < res.intervals.intervals.size(); ++k) {
        const auto& prev = res.intervals.intervals[k - 1];
        const auto& cur = res.intervals.intervals[k];
        const bool nested = cur.first >= prev.first && cur.second <= prev.second;
        const bool shrinking = (cur.second - cur.first) < (prev.second - prev.first);
        pass = pass && nested && shrinking;
    }
    res.all_checks_pass = pass;
    return res;
}

}
