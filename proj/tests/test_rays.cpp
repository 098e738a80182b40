#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pleat/rays.hpp"

using namespace pleat;

namespace {
Slope S(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }
const double kLn3 = std::log(3.0);
const double kSym = 2.0 * std::asinh(1.0);

void check_ray_shape(const RayTrace& ray, double tol) {
    REQUIRE(ray.samples.size() >= 2);
    const double g_star = ray.critical.trace_nu;
    CHECK(g_star - ray.samples.front().nu_trace < std::max(tol, 1e-13 * g_star));
    CHECK(std::abs(ray.samples.back().nu_trace - 2.0) < 1e-12);
    for (std::size_t k = 0; k < ray.samples.size(); ++k) {
        const RaySample& s = ray.samples[k];
        if (k > 0) {
            REQUIRE(s.nu_trace < ray.samples[k - 1].nu_trace);
            REQUIRE(s.nu_length < ray.samples[k - 1].nu_length);
        }
        REQUIRE(s.bending_angle > 0.0);
        REQUIRE(s.bending_angle < std::numbers::pi);
        REQUIRE(s.jorgensen >= 1.0 - 1e-9);
    }
}
}  // namespace

TEST_CASE("generator ray at c = ln 3") {
    RayTrace ray = trace_ray(S(0, 1), S(1, 0), kLn3);
    check_ray_shape(ray, 1e-10);
    for (const RaySample& s : ray.samples) {
        CHECK(std::abs(s.tau.real()) < 1e-12);
        // On tau = i theta the trace is 4 cos(theta/2).
        CHECK(std::abs(s.nu_trace - 4.0 * std::cos(s.tau.imag() / 2.0)) < 1e-10);
    }
    CHECK(ray.cusp.tau.imag() == doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-12));
    CHECK(ray.cusp.trace_sign == 2);
    CHECK(ray.cusp.residual < 1e-12);
    CHECK(ray.samples.size() == 64);
}

TEST_CASE("ray samples against explicit generators") {
    for (const Slope& nu : {S(1, 0), S(1, 2), S(-2, 3), S(3, 1), S(-1, 4)}) {
        for (double c : {0.4, 1.3, 2.5}) {
            RayTrace ray = trace_ray(S(0, 1), nu, c, {20, 1e-10, Branch::Upper});
            for (const RaySample& s : ray.samples) {
                auto [a, b] = oracle::fn_generators(c, s.tau);
                cplx t = oracle::word_product(a, b, curve_word(nu).letters).trace();
                CHECK(std::abs(t.imag()) < 1e-9 * std::max(1.0, std::abs(t)));
                CHECK(std::abs(t.real() - s.nu_trace) < 1e-9 * std::max(1.0, std::abs(t)));
            }
        }
    }
}

TEST_CASE("integral rays are vertical") {
    for (double c : {0.5, kLn3, kSym, 3.0}) {
        const double cusp_height = 2.0 * std::acos(std::tanh(c / 2.0));
        for (int m = -2; m <= 2; ++m) {
            RayTrace ray = trace_ray(S(0, 1), S(1, -m), c);
            check_ray_shape(ray, 1e-10);
            for (const RaySample& s : ray.samples) CHECK(std::abs(s.tau.real() - m * c) < 1e-8);
            CHECK(std::abs(ray.cusp.tau.imag() - cusp_height) < 1e-8);
        }
    }
}

TEST_CASE("rays from a sweep of slopes") {
    for (const Slope& mu : {S(0, 1), S(1, 2), S(-2, 3)}) {
        for (const Slope& nu : stern_brocot_enumerate(3)) {
            if (intersection_number(mu, nu) == 0) continue;
            for (double c : {0.3, 1.5}) {
                RayTrace ray;
                try {
                    ray = trace_ray(mu, nu, c, {24, 1e-10, Branch::Upper});
                } catch (const RayStalled& e) {
                    // Only rays whose critical trace is far beyond double range may stall.
                    CHECK(e.partial().critical.trace_nu > 1e10);
                    continue;
                }
                check_ray_shape(ray, 1e-10);
                QuakebendTrace qt(mu, c, nu);
                for (const RaySample& s : ray.samples) {
                    REQUIRE(std::abs(qt.value(s.tau).imag()) < 1e-9 * std::max(1.0, s.nu_trace));
                }
                CHECK(ray.cusp.residual < 1e-12);
            }
        }
    }
}

TEST_CASE("lower branch mirrors the upper one") {
    for (const Slope& nu : {S(1, 0), S(2, 3), S(-3, 1)}) {
        RayTrace up = trace_ray(S(0, 1), nu, 0.9, {16, 1e-10, Branch::Upper});
        RayTrace down = trace_ray(S(0, 1), nu, 0.9, {16, 1e-10, Branch::Lower});
        REQUIRE(up.samples.size() == down.samples.size());
        for (std::size_t k = 0; k < up.samples.size(); ++k) {
            CHECK(std::abs(up.samples[k].tau - std::conj(down.samples[k].tau)) < 1e-9);
            CHECK(down.samples[k].tau.imag() < 0.0);
        }
    }
}

TEST_CASE("cusp points") {
    CHECK(std::abs(cusp_point(S(0, 1), S(1, 0), kLn3).tau - cplx(0.0, 2.0 * std::numbers::pi / 3.0)) < 1e-10);
    CHECK(std::abs(cusp_point(S(0, 1), S(1, 0), kSym).tau - cplx(0.0, std::numbers::pi / 2.0)) < 1e-10);
    const double small = cusp_point(S(0, 1), S(1, 0), 1e-3).tau.imag();
    const double large = cusp_point(S(0, 1), S(1, 0), 30.0).tau.imag();
    CHECK(small < std::numbers::pi);
    CHECK(small > std::numbers::pi - 1e-2);
    CHECK(large > 0.0);
    CHECK(large < 1e-5);
}

TEST_CASE("locate_group") {
    LocatedGroup g = locate_group(S(0, 1), S(1, 0), kLn3, 2.0 * std::acosh(std::sqrt(2.0)));
    CHECK(std::abs(g.point.tau - cplx(0.0, std::numbers::pi / 2.0)) < 1e-12);
    CHECK(bending_angle(g.point) == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(g.group.fn.has_value());

    // Close to f the group approaches the Fuchsian critical point.
    CriticalPoint cp = critical_point(S(0, 1), S(2, 5), 1.0);
    LocatedGroup near = locate_group(S(0, 1), S(2, 5), 1.0, cp.f_value * (1.0 - 1e-9));
    CHECK(std::abs(near.point.tau - cplx(cp.t_star, 0.0)) < 1e-3);

    CHECK_THROWS_AS(locate_group(S(0, 1), S(1, 0), 1.0986, 99.0), Error);
    try {
        locate_group(S(0, 1), S(1, 0), 1.0986, 99.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRegion);
    }

    auto slopes = stern_brocot_enumerate(3);
    for (int k = 0; k < 40; ++k) {
        Slope mu = slopes[static_cast<std::size_t>(oracle::uniform(0, static_cast<double>(slopes.size())))];
        Slope nu = slopes[static_cast<std::size_t>(oracle::uniform(0, static_cast<double>(slopes.size())))];
        const auto i = intersection_number(mu, nu);
        if (i == 0 || i > 3) continue;
        const double c = oracle::uniform(0.3, 3.0);
        const double d = f_value(mu, nu, c) * oracle::uniform(0.05, 0.95);
        LocatedGroup lg = locate_group(mu, nu, c, d);
        auto [l_mu, l_nu] = remeasure(lg, nu);
        CHECK(std::abs(l_mu - c) < 1e-8);
        CHECK(std::abs(l_nu - d) < 1e-8);
        CHECK(lg.group.mark_mu == mu);
    }
}

TEST_CASE("out-of-reach rays stall cleanly") {
    // i = 23 at small c: the critical trace is ~1e17, beyond double precision.
    try {
        trace_ray(S(5, 2), S(-4, 3), 0.709346);
        FAIL("expected a stall");
    } catch (const RayStalled& e) {
        CHECK(e.kind() == ErrorKind::StalledContinuation);
        CHECK(e.partial().critical.f_value > 50.0);
    }
}

TEST_CASE("ray preconditions") {
    CHECK_THROWS_AS(trace_ray(S(0, 1), S(0, 1), 1.0), Error);
    CHECK_THROWS_AS(trace_ray(S(0, 1), S(1, 0), -1.0), Error);
    CHECK_THROWS_AS(trace_ray(S(0, 1), S(1, 0), 1.0, {1, 1e-10, Branch::Upper}), Error);
    CHECK(bending_angle({S(0, 1), 1.0, cplx(0.3, 0.0)}) == 0.0);
}
