#include "pleat/complexlen.hpp"

#include <cmath>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

// Shift the imaginary part into (-pi, pi] and return the number of 2*pi steps removed.
cplx principal_lift(cplx v, int& steps) {
    double k = std::ceil((v.imag() - kPi) / (2.0 * kPi));
    steps = static_cast<int>(k);
    return {v.real(), v.imag() - 2.0 * kPi * k};
}

}  // namespace

Matrix2C Matrix2C::normalized() const {
    cplx s = std::sqrt(det());
    if (s == cplx{0.0}) {
        throw Error(ErrorKind::DegenerateElement, "singular matrix cannot be normalized");
    }
    return {a / s, b / s, c / s, d / s};
}

Matrix2C compose(const Matrix2C& m1, const Matrix2C& m2) { return (m1 * m2).normalized(); }

Matrix2C commutator(const Matrix2C& a, const Matrix2C& b) {
    return (a * b * a.inverse() * b.inverse()).normalized();
}

ComplexLength complex_length_from_trace(cplx t, const std::optional<ComplexLength>& previous,
                                        const LengthOptions& options) {
    if (options.require_loxodromic &&
        (std::abs(t - 2.0) < options.cusp_tolerance || std::abs(t + 2.0) < options.cusp_tolerance)) {
        throw Error(ErrorKind::CuspTrace, "trace is +-2; the element is parabolic");
    }
    // Every solution of +-t = 2 cosh(lambda/2) has the form +-2a + 2 pi i k.
    cplx a2 = 2.0 * std::acosh(t / 2.0);
    if (a2.real() < 0.0) a2 = -a2;

    int base_steps = 0;
    cplx principal = principal_lift(a2, base_steps);
    if (!previous) {
        return {principal, 0};
    }

    const cplx target = previous->value;
    ComplexLength best{principal, 0};
    double best_dist = std::abs(principal - target);
    // Purely imaginary lengths admit both signs with Re = 0.
    const bool both_signs = std::abs(a2.real()) <= 1e-15 * (1.0 + std::abs(a2));
    for (int sign : {1, -1}) {
        if (sign < 0 && !both_signs) continue;
        int steps = 0;
        cplx base = principal_lift(static_cast<double>(sign) * a2, steps);
        int k = static_cast<int>(std::lround((target.imag() - base.imag()) / (2.0 * kPi)));
        for (int dk = -1; dk <= 1; ++dk) {
            cplx cand{std::abs(base.real()), base.imag() + 2.0 * kPi * (k + dk)};
            double dist = std::abs(cand - target);
            if (dist < best_dist) {
                best_dist = dist;
                int ps = 0;
                principal_lift(cand, ps);
                best = {cand, ps};
            }
        }
    }
    return best;
}

double jorgensen_value(const Matrix2C& a, const Matrix2C& b) {
    // Fricke: tr[a,b] = ta^2 + tb^2 + tab^2 - ta tb tab - 2. Avoids forming the
    // commutator, whose determinant is lost when the entries are large.
    const cplx sa = std::sqrt(a.det()), sb = std::sqrt(b.det());
    if (sa == cplx{0.0} || sb == cplx{0.0}) {
        throw Error(ErrorKind::DegenerateElement, "singular matrix in Jorgensen value");
    }
    const cplx ta = a.trace() / sa, tb = b.trace() / sb, tab = (a * b).trace() / (sa * sb);
    const cplx tc = ta * ta + tb * tb + tab * tab - ta * tb * tab - 2.0;
    return std::abs(ta * ta - 4.0) + std::abs(tc - 2.0);
}

FixedPoints fixed_points(const Matrix2C& m, double parabolic_tolerance) {
    const cplx tr = m.trace();
    const cplx disc = tr * tr - 4.0;
    const double scale = 1.0 + std::abs(m.a) + std::abs(m.b) + std::abs(m.c) + std::abs(m.d);

    FixedPoints out;
    if (std::abs(m.b) <= 1e-14 * scale && std::abs(m.c) <= 1e-14 * scale &&
        std::abs(m.a - m.d) <= 1e-14 * scale) {
        out.kind = FixedPointKind::Identity;
        return out;
    }
    if (std::abs(disc) <= parabolic_tolerance) {
        out.kind = FixedPointKind::Parabolic;
        SpherePoint p = std::abs(m.c) <= 1e-14 * scale ? SpherePoint::infinity()
                                                       : SpherePoint{(m.a - m.d) / (2.0 * m.c), false};
        out.attracting = out.repelling = p;
        return out;
    }
    if (std::abs(tr.imag()) <= parabolic_tolerance && std::abs(tr.real()) < 2.0) {
        out.kind = FixedPointKind::Elliptic;
    } else {
        out.kind = FixedPointKind::Loxodromic;
    }

    SpherePoint p1, p2;
    if (std::abs(m.c) <= 1e-14 * scale) {
        // Upper triangular: infinity and b/(d - a).
        p1 = SpherePoint::infinity();
        p2 = SpherePoint{m.b / (m.d - m.a), false};
    } else {
        cplx root = std::sqrt(disc);
        p1 = SpherePoint{(m.a - m.d + root) / (2.0 * m.c), false};
        p2 = SpherePoint{(m.a - m.d - root) / (2.0 * m.c), false};
    }
    // Multiplier at a finite fixed point z is 1/(cz + d)^2, at infinity (d/a)^2.
    auto multiplier = [&](const SpherePoint& p) {
        if (p.at_infinity) return std::norm(m.d / m.a);
        return 1.0 / std::norm(m.c * p.z + m.d);
    };
    if (multiplier(p1) < multiplier(p2)) {
        out.attracting = p1;
        out.repelling = p2;
    } else {
        out.attracting = p2;
        out.repelling = p1;
    }
    return out;
}

SpherePoint apply(const Matrix2C& m, const SpherePoint& p) {
    if (p.at_infinity) {
        if (m.c == cplx{0.0}) return SpherePoint::infinity();
        return {m.a / m.c, false};
    }
    cplx den = m.c * p.z + m.d;
    if (den == cplx{0.0}) return SpherePoint::infinity();
    return {(m.a * p.z + m.b) / den, false};
}

}  // namespace pleat
