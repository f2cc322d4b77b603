#include "escweb/map.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "escweb/errors.hpp"

namespace escweb {

const char* family_name(Family f) {
    switch (f) {
        case Family::FatouType: return "fatou-type";
        case Family::BergweilerType: return "bergweiler-type";
        case Family::Other: return "other";
    }
    return "other";
}

ExpAffineMap::ExpAffineMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    if (c == 0.0 || d == 0.0)
        throw std::invalid_argument("ExpAffineMap requires c != 0 and d != 0");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw std::invalid_argument("ExpAffineMap requires finite coefficients");
}

Family ExpAffineMap::family() const {
    if (a == 1.0 && b * d < 0.0) return Family::FatouType;
    if (a > 1.0) return Family::BergweilerType;
    return Family::Other;
}

std::string ExpAffineMap::label() const {
    std::ostringstream os;
    os << "f(z) = " << a << "*z + " << b << " + " << c << "*exp(" << d << "*z)";
    return os.str();
}

ExpAffineMap ExpAffineMap::fatou() { return ExpAffineMap(1.0, 1.0, 1.0, -1.0); }

ExpAffineMap ExpAffineMap::bergweiler() {
    return ExpAffineMap(2.0, 2.0 - std::log(2.0), -1.0, 1.0);
}

bool operator==(const ExpAffineMap& lhs, const ExpAffineMap& rhs) {
    return lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
}

bool evaluation_overflows(const ExpAffineMap& map, complexd z) {
    if (map.d * z.real() > kExpArgMax) return true;
    // A huge affine part can overflow without the exponential's help.
    if (std::abs(z.real()) > 1e307 / std::abs(map.a) || std::abs(z.imag()) > 1e307 / std::abs(map.a))
        return true;
    return false;
}

complexd evaluate(const ExpAffineMap& map, complexd z) {
    if (map.d * z.real() > kExpArgMax)
        throw OverflowError("evaluate: exp(d*Re z) exceeds binary64 range");
    complexd w = map.a * z + map.b + map.c * std::exp(map.d * z);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw OverflowError("evaluate: result exceeds binary64 range");
    return w;
}

complexd derivative(const ExpAffineMap& map, complexd z) {
    if (map.d * z.real() > kExpArgMax)
        throw OverflowError("derivative: exp(d*Re z) exceeds binary64 range");
    return map.a + map.c * map.d * std::exp(map.d * z);
}

}
