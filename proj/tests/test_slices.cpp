#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pleat/slices.hpp"

using namespace pleat;

namespace {
Slope S(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }
const double kLn3 = std::log(3.0);

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Proper crossing of segments pq and rs (shared endpoints do not count).
bool segments_cross(cplx p, cplx q, cplx r, cplx s) {
    const double d1 = cross(q - p, r - p), d2 = cross(q - p, s - p);
    const double d3 = cross(s - r, p - r), d4 = cross(s - r, q - r);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}
}  // namespace

TEST_CASE("depth 0 slice") {
    BMSliceDataset ds = bm_slice(S(0, 1), kLn3, 0);
    REQUIRE(ds.entries.size() == 3);
    CHECK(ds.entries[0].nu == S(-1, 1));
    CHECK(ds.entries[1].nu == S(1, 1));
    CHECK(ds.entries[2].nu == S(1, 0));
    CHECK(ds.diagnostics.empty());
    const CuspPoint& cusp = ds.entries[2].ray.cusp;
    CHECK(std::abs(cusp.tau - cplx(0.0, 2.0 * std::numbers::pi / 3.0)) < 1e-10);
    CHECK(ds.entries[2].jmap_bound == doctest::Approx(2.0 * std::acosh(2.0)));
}

TEST_CASE("empty sector") {
    SliceOptions opt;
    opt.sector = SlopeInterval{S(301, 1000), S(151, 500)};
    BMSliceDataset ds = bm_slice(S(0, 1), kLn3, 2, opt);
    CHECK(ds.entries.empty());
    CHECK(ds.diagnostics.empty());
}

TEST_CASE("slice foliation and cusp ranges") {
    SliceOptions opt;
    opt.samples = 24;
    opt.workers = 2;
    BMSliceDataset ds = bm_slice(S(0, 1), kLn3, 3, opt);
    CHECK(ds.diagnostics.empty());
    REQUIRE(ds.entries.size() == 31);
    for (const SliceEntry& e : ds.entries) {
        const double h = e.ray.cusp.tau.imag();
        CHECK(h > 0.0);
        CHECK(h < std::numbers::pi);
        // Integral rays through the Farey neighbours bound Re tau: for nu = p/q
        // they sit at Re tau = -floor(q/p) c and -ceil(q/p) c.
        if (e.nu.p() != 0 && !e.nu.is_infinite()) {
            const double x = static_cast<double>(e.nu.q()) / static_cast<double>(e.nu.p());
            const double lo = -std::ceil(x) * kLn3, hi = -std::floor(x) * kLn3;
            CHECK(e.ray.cusp.tau.real() >= lo - 1e-9);
            CHECK(e.ray.cusp.tau.real() <= hi + 1e-9);
        }
        for (const RaySample& s : e.ray.samples) {
            JPoint j = jmap(s, ds.mu, e.nu);
            CHECK(j.scaled_length < e.jmap_bound * (1.0 + 1e-12));
        }
    }
    // Distinct rays never meet, and each polyline is simple.
    for (std::size_t a = 0; a < ds.entries.size(); ++a) {
        const auto& ra = ds.entries[a].ray.samples;
        for (std::size_t i = 0; i + 1 < ra.size(); ++i) {
            for (std::size_t j = i + 2; j + 1 < ra.size(); ++j) {
                REQUIRE_FALSE(segments_cross(ra[i].tau, ra[i + 1].tau, ra[j].tau, ra[j + 1].tau));
            }
        }
        for (std::size_t b = a + 1; b < ds.entries.size(); ++b) {
            const auto& rb = ds.entries[b].ray.samples;
            for (const RaySample& s : ra) {
                for (const RaySample& t : rb) REQUIRE(std::abs(s.tau - t.tau) > 1e-9);
            }
            for (std::size_t i = 0; i + 1 < ra.size(); ++i) {
                for (std::size_t j = 0; j + 1 < rb.size(); ++j) {
                    REQUIRE_FALSE(segments_cross(ra[i].tau, ra[i + 1].tau, rb[j].tau, rb[j + 1].tau));
                }
            }
        }
    }
}

TEST_CASE("worker count does not change the result") {
    SliceOptions one;
    one.samples = 12;
    SliceOptions many = one;
    many.workers = 4;
    BMSliceDataset a = bm_slice(S(1, 2), 1.2, 2, one);
    BMSliceDataset b = bm_slice(S(1, 2), 1.2, 2, many);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        CHECK(a.entries[k].nu == b.entries[k].nu);
        REQUIRE(a.entries[k].ray.samples.size() == b.entries[k].ray.samples.size());
        for (std::size_t s = 0; s < a.entries[k].ray.samples.size(); ++s) {
            CHECK(a.entries[k].ray.samples[s].tau == b.entries[k].ray.samples[s].tau);
        }
    }
}

TEST_CASE("jmap") {
    RaySample s;
    s.nu_length = 2.0 * std::acosh(std::sqrt(2.0));
    JPoint j = jmap(s, S(0, 1), S(1, 0));
    CHECK(std::isinf(j.slope_value));
    CHECK(j.scaled_length == doctest::Approx(2.0 * std::acosh(std::sqrt(2.0))));
    // i(1/0, 1/2) = 2
    JPoint half = jmap(s, S(1, 0), S(1, 2));
    CHECK(half.slope_value == doctest::Approx(0.5));
    CHECK(half.scaled_length == doctest::Approx(std::acosh(std::sqrt(2.0))));
    s.nu_length = 0.0;
    CHECK(jmap(s, S(0, 1), S(1, 0)).scaled_length == 0.0);
    CHECK_THROWS_AS(jmap(s, S(0, 1), S(0, 1)), Error);
}

TEST_CASE("pleating plane") {
    std::vector<double> grid;
    for (int k = 1; k <= 30; ++k) grid.push_back(0.15 * k);
    PleatingPlaneImage img = pleating_plane(S(0, 1), S(1, 0), grid,
                                            {{kLn3, 2.0 * std::acosh(std::sqrt(2.0))}, {kLn3, 5.0}}, 2);
    REQUIRE(img.graph.size() == grid.size());
    for (std::size_t k = 0; k < img.graph.size(); ++k) {
        auto [c, f] = img.graph[k];
        CHECK(std::abs(std::sinh(c / 2) * std::sinh(f / 2) - 1.0) < 1e-10);
        CHECK(f == doctest::Approx(f_value(S(0, 1), S(1, 0), c)).epsilon(1e-14));
        if (k > 0) CHECK(f < img.graph[k - 1].second);
    }
    REQUIRE(img.located.size() == 2);
    CHECK(img.located[0].in_region);
    CHECK(std::abs(img.located[0].tau - cplx(0.0, std::numbers::pi / 2.0)) < 1e-12);
    CHECK_FALSE(img.located[1].in_region);
    CHECK(img.located[1].message.find("OutOfRegion") != std::string::npos);
    CHECK_THROWS_AS(pleating_plane(S(0, 1), S(0, 1), grid), Error);
}

TEST_CASE("boundary catalog") {
    std::vector<CuspPoint> shallow = qf_boundary_catalog(S(0, 1), kLn3, 2);
    std::vector<SliceDiagnostic> diag;
    std::vector<CuspPoint> cat = qf_boundary_catalog(S(0, 1), kLn3, 3, {}, &diag);
    CHECK(diag.empty());
    CHECK(cat.size() >= 17);
    for (std::size_t k = 0; k < cat.size(); ++k) {
        const CuspPoint& cp = cat[k];
        auto [a, b] = oracle::fn_generators(kLn3, cp.tau);
        const cplx t = oracle::word_product(a, b, curve_word(cp.nu).letters).trace();
        CHECK(std::abs(t - static_cast<double>(cp.trace_sign)) < 1e-11);
        CHECK(cp.residual < 1e-12);
        CHECK(cp.tau.imag() > 0.0);
        CHECK(cp.tau.imag() < std::numbers::pi);
        if (k > 0) CHECK(slope_less(cat[k - 1].nu, cp.nu));
    }
    // Refinement keeps every shallower cusp.
    for (const CuspPoint& s : shallow) {
        auto it = std::find_if(cat.begin(), cat.end(), [&](const CuspPoint& c) { return c.nu == s.nu; });
        REQUIRE(it != cat.end());
        CHECK(std::abs(it->tau - s.tau) < 1e-10);
    }
    CHECK(std::abs(cat.back().tau - cplx(0.0, 2.0 * std::numbers::pi / 3.0)) < 1e-10);
}
