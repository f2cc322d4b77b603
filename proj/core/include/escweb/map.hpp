#pragma once

#include <complex>
#include <string>

namespace escweb {

using complexd = std::complex<double>;

// exp(x) overflows binary64 just above x = 709.78; we refuse a little earlier.
inline constexpr double kExpArgMax = 709.0;

enum class Family { FatouType, BergweilerType, Other };

const char* family_name(Family f);

// f(z) = a*z + b + c*exp(d*z) with real coefficients, c != 0, d != 0.
struct ExpAffineMap {
    double a;
    double b;
    double c;
    double d;

    ExpAffineMap(double a_, double b_, double c_, double d_);

    Family family() const;
    std::string label() const;

    // f(z) = z + 1 + exp(-z)
    static ExpAffineMap fatou();
    // g(z) = 2z + 2 - log 2 - exp(z)
    static ExpAffineMap bergweiler();
};

bool operator==(const ExpAffineMap& lhs, const ExpAffineMap& rhs);

// Throws OverflowError when exp(d*Re z) is not representable (d*Re z > 709)
// or when the affine part itself leaves the binary64 range.
complexd evaluate(const ExpAffineMap& map, complexd z);

// f'(z) = a + c*d*exp(d*z)
complexd derivative(const ExpAffineMap& map, complexd z);

// True when evaluate(map, z) would throw OverflowError.
bool evaluation_overflows(const ExpAffineMap& map, complexd z);

}
