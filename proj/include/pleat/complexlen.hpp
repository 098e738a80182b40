#pragma once

#include <complex>
#include <optional>

namespace pleat {

using cplx = std::complex<double>;

/// A determinant-one representative of an orientation-preserving isometry of
/// hyperbolic 3-space, acting on the Riemann sphere by z -> (az + b)/(cz + d).
struct Matrix2C {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Matrix2C identity() { return {}; }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    // Inverse of a determinant-one matrix.
    Matrix2C inverse() const { return {d, -b, -c, a}; }

    // Rescale by 1/sqrt(det) so the determinant is exactly representable as 1.
    Matrix2C normalized() const;

    friend Matrix2C operator*(const Matrix2C& m, const Matrix2C& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    friend bool operator==(const Matrix2C&, const Matrix2C&) = default;
};

Matrix2C compose(const Matrix2C& m1, const Matrix2C& m2);

// a b a^-1 b^-1
Matrix2C commutator(const Matrix2C& a, const Matrix2C& b);

/// Complex translation length with the 2*pi*i lift used to keep it continuous
/// along a path. branch_offset counts the multiples of 2*pi added to the
/// principal imaginary part, so value.imag() lies in
/// (-pi, pi] + 2*pi*branch_offset.
struct ComplexLength {
    cplx value{0.0};
    int branch_offset = 0;
};

struct LengthOptions {
    bool require_loxodromic = false;
    double cusp_tolerance = 1e-12;
};

// Solves +-t = 2 cosh(lambda/2) for lambda with Re lambda >= 0. Without a
// previous value the imaginary part is taken in (-pi, pi]; otherwise the lift
// closest to the previous value is returned.
ComplexLength complex_length_from_trace(cplx t, const std::optional<ComplexLength>& previous = std::nullopt,
                                        const LengthOptions& options = {});

// |tr^2 a - 4| + |tr [a,b] - 2|. A discrete non-elementary group has value >= 1.
double jorgensen_value(const Matrix2C& a, const Matrix2C& b);

/// Point of the Riemann sphere.
struct SpherePoint {
    cplx z{0.0};
    bool at_infinity = false;

    static SpherePoint infinity() { return {cplx{0.0}, true}; }
};

enum class FixedPointKind { Loxodromic, Parabolic, Elliptic, Identity };

struct FixedPoints {
    FixedPointKind kind = FixedPointKind::Identity;
    // For parabolics both entries hold the single fixed point.
    SpherePoint attracting;
    SpherePoint repelling;
};

FixedPoints fixed_points(const Matrix2C& m, double parabolic_tolerance = 1e-9);

// Action of m on the Riemann sphere.
SpherePoint apply(const Matrix2C& m, const SpherePoint& p);

}  // namespace pleat
