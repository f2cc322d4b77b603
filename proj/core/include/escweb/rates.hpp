#pragma once

#include <cmath>
#include <stdexcept>

namespace escweb {

enum class RateKind { Arithmetic, Geometric };

const char* rate_kind_name(RateKind k);

// Admissible escape-rate sequence a_n, strictly increasing in n and
// nondecreasing in the offset m.
//   Arithmetic: a_n = (n + m) / 2
//   Geometric:  a_n = sqrt(2)^(n + m)
struct RateSequence {
    RateKind kind;
    int m;

    RateSequence(RateKind kind_, int m_) : kind(kind_), m(m_) {
        if (m < 0) throw std::invalid_argument("RateSequence requires m >= 0");
    }

    static RateSequence arithmetic(int m) { return RateSequence(RateKind::Arithmetic, m); }
    static RateSequence geometric(int m) { return RateSequence(RateKind::Geometric, m); }

    // Defined for n >= 0; the sequence proper starts at n = 1, n = 0 is the
    // natural extension used by certificates fired before the first step.
    double eval(int n) const {
        if (n < 0) throw std::invalid_argument("RateSequence::eval requires n >= 0");
        return kind == RateKind::Arithmetic ? 0.5 * (n + m)
                                            : std::exp2(0.5 * (n + m));
    }
};

inline const char* rate_kind_name(RateKind k) {
    return k == RateKind::Arithmetic ? "arithmetic" : "geometric";
}

inline bool operator==(const RateSequence& lhs, const RateSequence& rhs) {
    return lhs.kind == rhs.kind && lhs.m == rhs.m;
}

}
