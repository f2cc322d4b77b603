#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "escweb/map.hpp"

namespace escweb {

// Polyline stage of the inductive curve construction. Every point is
// f^level(gamma0(t)) where gamma0(t) is the exact affine interpolation of the
// base segment, so refinement never drifts off the true curve.
struct TracedCurve {
    std::vector<complexd> points;
    std::vector<double> params;  // gamma0-relative, strictly increasing, within [0,1]
    int level;
    double a_k;        // anchor real part; for a freshly pushed image this is the source anchor
    double strip_row;  // nominal half-strip row floor(y / 2pi), kept as double
    complexd base_start;
    complexd base_end;
};

struct ConditionChecks {
    bool a = false;
    bool b = false;
    bool c = false;
    bool d = false;
    bool all() const { return a && b && c && d; }
};

// One completed push + selection (level k -> k+1).
struct PushRecord {
    int source_level = 0;
    double eq41_lhs = 0.0;   // e^{|a_k|}/2, the guaranteed image modulus floor
    double eq41_rhs = 0.0;   // enclosing radius of the next rectangle
    bool eq41_pass = false;
    bool eq41_derived = false;  // true for the Bergweiler-type gate (not restated in source)
    double mod_z1 = 0.0;        // |f(z_{k,1})|
    double mod_z2 = 0.0;        // |f(z_{k,2})|
    double eq42_ratio = 0.0;
    bool eq42_pass = false;          // ratio >= e^10/4
    double paper_threshold = 0.0;    // (e^10/8) |f(z_{k,1})|, reported only
    double selected_min_modulus = 0.0;
    bool paper_gate_met = false;     // informational; unreachable jointly with K=2 in binary64
    int image_points = 0;
    double max_spacing = 0.0;
};

struct LevelRecord {
    int level = 0;
    double a_k = 0.0;
    double strip_row = 0.0;
    double s = 0.0;  // parameter interval on gamma0
    double t = 0.0;
    int points = 0;
    bool degenerate = false;  // selection window collapsed below one ulp
    ConditionChecks conditions;
    double growth_abs = 0.0;     // |f^level(zeta)|
    double growth_target = 0.0;  // 3(level+m)pi or 2^{level+4}
    bool growth_pass = false;
    double zeta_distance = 0.0;  // distance from f^level(zeta) to this polyline
};

struct NestedIntervals {
    std::vector<std::pair<double, double>> intervals;
};

// Symbolic continuation past the float cap. Once the last computed level holds
// conditions (a)-(d), the modulus bounds force |a_{l+1}| >= e^{|a_l|}/4 - 1, so
// the remaining levels certify by monotone induction in log space without
// evaluating anything.
struct ContinuationCertificate {
    bool certified = false;
    int from_level = 0;  // first level that was not computed
    int to_level = 0;    // last requested level
    std::string basis;
};

enum class TraceStatus { Completed, RangeError, SelectionFailure };

const char* trace_status_name(TraceStatus s);

struct TraceResult {
    TraceStatus status = TraceStatus::Completed;
    std::string note;
    ExpAffineMap map;
    int m = 0;
    int j0 = 0;
    double a0 = 0.0;
    int K = 0;
    complexd zeta;
    double zeta_param = 0.0;
    NestedIntervals intervals;
    std::vector<LevelRecord> levels;   // one per constructed curve, level 0..completed
    std::vector<PushRecord> pushes;    // one per completed selection
    std::optional<ContinuationCertificate> continuation;  // set when the float cap stopped the chain
    bool all_checks_pass = false;      // conditions, gates, growth, nesting on completed levels
};

// Horizontal segment on the strip midline y = (2 j0 + 1) pi, ten units long,
// anchored at a0 on the side facing the essential growth. Throws
// PreconditionError when condition (a) or (d) fails at any sample.
TracedCurve construct_initial_curve(const ExpAffineMap& map, int m, int j0, double a0,
                                    double step = 0.01);

// Image polyline under one application of the map, adaptively refined until
// consecutive image points are closer than maxSpacing (default: a tenth of the
// image endpoint span). Throws RangeError on overflow, SubdivisionCapExceeded
// past 2^20 points.
TracedCurve push_curve(const ExpAffineMap& map, const TracedCurve& curve,
                       double max_spacing = 0.0);

// Level-(k+1) subcurve: anchors a_{k+1} at the extreme achieved real part of
// the condition-(d) points minus a unit margin, then locates the two Re
// crossings by parametric bisection. Throws SelectionFailure.
TracedCurve select_subcurve(const ExpAffineMap& map, const TracedCurve& image, int m);

// Full construction: K pushes/selections, nested parameter intervals, zeta
// from the final interval midpoint, per-level growth verification. Partial
// results carry the error status instead of throwing.
TraceResult trace(const ExpAffineMap& map, int m, int j0, double a0, int K);

struct TraceDefaults {
    int j0;
    double a0;
    int K;
};

// Parameters that make the default construction pass its own growth gates.
TraceDefaults default_trace_params(Family family, int m);

std::string to_json_string(const TraceResult& r);

}
