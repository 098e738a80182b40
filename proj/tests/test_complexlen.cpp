#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pleat/complexlen.hpp"
#include "pleat/error.hpp"
#include "pleat/fngroup.hpp"

using namespace pleat;

namespace {

Matrix2C random_matrix() {
    auto r = [] { return cplx{oracle::uniform(-2, 2), oracle::uniform(-2, 2)}; };
    Matrix2C m{r(), r(), r(), r()};
    while (std::abs(m.det()) < 0.1) m = {r(), r(), r(), r()};
    return m.normalized();
}

bool near(const Matrix2C& m, const Matrix2C& n, double tol) {
    return std::abs(m.a - n.a) < tol && std::abs(m.b - n.b) < tol && std::abs(m.c - n.c) < tol &&
           std::abs(m.d - n.d) < tol;
}

}  // namespace

TEST_CASE("compose with identity and inverse") {
    Matrix2C m = random_matrix();
    CHECK(near(compose(Matrix2C::identity(), m), m, 1e-15));
    CHECK(near(compose(m, m.inverse()), Matrix2C::identity(), 1e-12));
}

TEST_CASE("compose keeps determinant one") {
    for (int i = 0; i < 1000; ++i) {
        Matrix2C p = compose(random_matrix(), random_matrix());
        REQUIRE(std::abs(p.det() - 1.0) < 1e-12);
    }
}

TEST_CASE("hexagonal group products and commutator") {
    MarkedGroup g = matrices_from_triple({3.0, 3.0, 3.0});
    CHECK(std::abs(compose(g.gen_a, g.gen_b).trace() - 3.0) < 1e-12);
    CHECK(std::abs(commutator(g.gen_a, g.gen_b).trace() + 2.0) < 1e-9);

    const double s3 = std::sqrt(3.0);
    MarkedGroup r = matrices_from_triple({4.0 / s3, 4.0, 8.0 / s3});
    CHECK(std::abs(commutator(r.gen_a, r.gen_b).trace() + 2.0) < 1e-9);
}

TEST_CASE("commuting pair has trivial commutator") {
    Matrix2C a{2.0, 0.0, 0.0, 0.5};
    Matrix2C b{cplx{0, 1}, 0.0, 0.0, cplx{0, -1}};
    CHECK(near(commutator(a, b), Matrix2C::identity(), 1e-15));
}

TEST_CASE("complex length examples") {
    CHECK(std::abs(complex_length_from_trace(4.0).value - 2.0 * std::acosh(2.0)) < 1e-14);
    CHECK(std::abs(complex_length_from_trace(4.0).value - 2.633915793849633) < 1e-12);
    CHECK(std::abs(complex_length_from_trace(2.0).value) == 0.0);
    CHECK(std::abs(complex_length_from_trace(2.0 * std::sqrt(2.0)).value - 1.762747174039086) < 1e-12);
    CHECK_THROWS_AS(complex_length_from_trace(2.0, std::nullopt, {true, 1e-9}), Error);
    CHECK_THROWS_AS(complex_length_from_trace(-2.0 + 1e-12, std::nullopt, {true, 1e-9}), Error);
}

TEST_CASE("complex length inverts the trace formula") {
    for (int i = 0; i < 10000; ++i) {
        double r = oracle::uniform(0, 100);
        double th = oracle::uniform(-std::numbers::pi, std::numbers::pi);
        cplx t = std::polar(r, th);
        ComplexLength l = complex_length_from_trace(t);
        cplx back = 2.0 * std::cosh(l.value / 2.0);
        REQUIRE(l.value.real() >= 0.0);
        REQUIRE(l.value.imag() > -std::numbers::pi);
        REQUIRE(l.value.imag() <= std::numbers::pi);
        REQUIRE(std::min(std::abs(back - t), std::abs(back + t)) < 1e-12 * std::max(1.0, std::abs(t)));
    }
}

TEST_CASE("complex length is continuous along sampled paths") {
    // Paths through the trace plane away from the branch points +-2.
    for (int path = 0; path < 50; ++path) {
        cplx t{oracle::uniform(3, 6), oracle::uniform(-4, 4)};
        std::optional<ComplexLength> prev;
        for (int step = 0; step < 400; ++step) {
            cplx next = t + std::polar(0.09, oracle::uniform(0, 2 * std::numbers::pi));
            if (std::abs(next - 2.0) < 0.5 || std::abs(next + 2.0) < 0.5) continue;
            t = next;
            ComplexLength l = complex_length_from_trace(t, prev);
            if (prev) REQUIRE(std::abs(l.value - prev->value) < 0.5);
            prev = l;
        }
    }
}

TEST_CASE("continued lift stays a solution after winding around t = 2") {
    std::optional<ComplexLength> prev;
    const int n = 2000;
    for (int k = 0; k <= n; ++k) {
        cplx t = 2.0 + std::polar(1.0, 2.0 * std::numbers::pi * k / n);
        prev = complex_length_from_trace(t, prev);
    }
    cplx back = 2.0 * std::cosh(prev->value / 2.0);
    CHECK(std::min(std::abs(back - 3.0), std::abs(back + 3.0)) < 1e-9);
    CHECK(prev->value.real() >= 0.0);
}

TEST_CASE("jorgensen values") {
    MarkedGroup g = matrices_from_triple({3.0, 3.0, 3.0});
    CHECK(jorgensen_value(g.gen_a, g.gen_b) >= 1.0);
    CHECK(jorgensen_value(Matrix2C::identity(), Matrix2C::identity()) == doctest::Approx(0.0));
}

TEST_CASE("fixed points") {
    Matrix2C diag{2.0, 0.0, 0.0, 0.5};
    FixedPoints fp = fixed_points(diag);
    CHECK(fp.kind == FixedPointKind::Loxodromic);
    CHECK(fp.attracting.at_infinity);
    CHECK(!fp.repelling.at_infinity);
    CHECK(std::abs(fp.repelling.z) < 1e-15);

    FixedPoints par = fixed_points(Matrix2C{1.0, 1.0, 0.0, 1.0});
    CHECK(par.kind == FixedPointKind::Parabolic);
    CHECK(par.attracting.at_infinity);

    MarkedGroup g = matrices_from_triple({3.0, 3.0, 3.0});
    FixedPoints k = fixed_points(commutator(g.gen_a, g.gen_b));
    CHECK(k.kind == FixedPointKind::Parabolic);
    CHECK(k.attracting.z == k.repelling.z);

    CHECK(fixed_points(Matrix2C::identity()).kind == FixedPointKind::Identity);

    // A random loxodromic: attracting point is fixed and pulls nearby points in.
    Matrix2C m{cplx{1.5, 0.3}, cplx{0.2, 1.0}, cplx{-0.4, 0.1}, 0.0};
    m.d = (1.0 + m.b * m.c) / m.a;
    FixedPoints f = fixed_points(m);
    REQUIRE(f.kind == FixedPointKind::Loxodromic);
    SpherePoint img = apply(m, f.attracting);
    CHECK(std::abs(img.z - f.attracting.z) < 1e-12);
    SpherePoint near_pt{f.attracting.z + 1e-3, false};
    CHECK(std::abs(apply(m, near_pt).z - f.attracting.z) < 1e-3);
}
