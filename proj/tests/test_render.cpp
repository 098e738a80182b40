#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "pleat/render.hpp"

using namespace pleat;
namespace fs = std::filesystem;

namespace {
Slope S(std::int64_t p, std::int64_t q) { return reduce_slope(p, q); }
const double kLn3 = std::log(3.0);

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "pleat_render_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Algebraic (Kasa) circle fit: x^2 + y^2 + D x + E y + F = 0 by normal equations.
std::pair<cplx, double> fit_circle(const std::vector<cplx>& pts) {
    double m[3][4] = {};
    for (cplx p : pts) {
        const double x = p.real(), y = p.imag(), r = -(x * x + y * y);
        const double row[3] = {x, y, 1.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
            m[i][3] += row[i] * r;
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int k = i + 1; k < 3; ++k) {
            const double f = m[k][i] / m[i][i];
            for (int j = i; j < 4; ++j) m[k][j] -= f * m[i][j];
        }
    }
    double sol[3];
    for (int i = 2; i >= 0; --i) {
        double s = m[i][3];
        for (int j = i + 1; j < 3; ++j) s -= m[i][j] * sol[j];
        sol[i] = s / m[i][i];
    }
    const cplx center(-sol[0] / 2.0, -sol[1] / 2.0);
    return {center, std::sqrt(std::norm(center) - sol[2])};
}
}  // namespace

TEST_CASE("viewport letterboxing") {
    Viewport vp{-1.0, 1.0, -1.0, 1.0, 800, 600};
    auto [x0, y0] = vp.to_pixel(-1.0, -1.0);
    auto [x1, y1] = vp.to_pixel(1.0, 1.0);
    CHECK(x0 == doctest::Approx(100.0));
    CHECK(y0 == doctest::Approx(600.0));
    CHECK(x1 == doctest::Approx(700.0));
    CHECK(y1 == doctest::Approx(0.0));
    CHECK_THROWS_AS((Viewport{1.0, 1.0, 0.0, 1.0, 10, 10}.validate()), Error);
    CHECK_THROWS_AS((Viewport{0.0, 1.0, 0.0, 1.0, 0, 10}.validate()), Error);
    Viewport fit = fit_viewport({cplx(0, 0), cplx(2, 1)});
    CHECK(fit.x_min < 0.0);
    CHECK(fit.x_max > 2.0);
}

TEST_CASE("slice svg") {
    Viewport vp{-3.0, 3.0, -0.5, 3.5, 600, 400};
    BMSliceDataset empty;
    empty.mu = S(0, 1);
    empty.c = kLn3;
    const std::string axes_only = svg_slice(empty, vp);
    CHECK(axes_only.find("<path") == std::string::npos);
    CHECK(axes_only.find("<line") != std::string::npos);

    BMSliceDataset ds = bm_slice(S(0, 1), kLn3, 0);
    const std::string svg = svg_slice(ds, vp);
    auto [cx, cy] = vp.to_pixel(0.0, 2.0 * std::numbers::pi / 3.0);
    char expect[96];
    std::snprintf(expect, sizeof expect, "cx=\"%.3f\" cy=\"%.3f\"", cx, cy);
    CHECK(svg.find(expect) != std::string::npos);
    // The generator ray is the vertical segment from 0 up to the cusp.
    auto [bx, by] = vp.to_pixel(0.0, 0.0);
    std::snprintf(expect, sizeof expect, "M%.3f %.3f", bx, by);
    CHECK(svg.find(expect) != std::string::npos);

    const fs::path a = scratch("a.svg"), b = scratch("b.svg");
    emit_svg_slice(ds, vp, a);
    emit_svg_slice(bm_slice(S(0, 1), kLn3, 0), vp, b);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(fs::exists(a.string() + ".tmp"));
}

TEST_CASE("limit set of a Fuchsian group lies on a circle") {
    MarkedGroup g = matrices_from_triple(triple_from_fn({cplx(1.2), cplx(0.4)}));
    CHECK(limit_set_points(g, 0).size() == 1);
    std::vector<cplx> pts = limit_set_points(g, 7);
    CHECK(pts.size() > 500);
    auto [center, radius] = fit_circle(pts);
    double worst = 0.0;
    for (cplx p : pts) worst = std::max(worst, std::abs(std::abs(p - center) - radius));
    CHECK(worst / radius < 1e-6);

    // A genuinely bent group is not round.
    MarkedGroup bent = matrices_from_triple(triple_from_fn({cplx(1.2), cplx(0.4, 1.0)}));
    std::vector<cplx> q = limit_set_points(bent, 7);
    auto [c2, r2] = fit_circle(q);
    double spread = 0.0;
    for (cplx p : q) spread = std::max(spread, std::abs(std::abs(p - c2) - r2));
    CHECK(spread / r2 > 1e-3);
}

TEST_CASE("csv") {
    const fs::path p = scratch("empty.csv");
    emit_csv({}, kRaySchema, p);
    CHECK(slurp(p) == "re_tau,im_tau,nu_trace,nu_length,bending_angle\n");

    RayTrace ray = trace_ray(S(0, 1), S(2, 3), 0.8, {17, 1e-10, Branch::Upper});
    CsvRows rows = ray_rows(ray);
    CHECK(rows.size() == ray.samples.size());
    const fs::path q = scratch("ray.csv");
    emit_csv(rows, kRaySchema, q);
    const std::string text = slurp(q);
    CHECK(text.find('\r') == std::string::npos);
    CsvTable back = read_csv(q);
    CHECK(back.header == kRaySchema.columns);
    REQUIRE(back.rows.size() == rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t k = 0; k < rows[r].size(); ++k) CHECK(back.rows[r][k] == rows[r][k]);
    }
    CHECK(std::abs(back.rows.back()[2] - 2.0) < 1e-12);
    CHECK_THROWS_AS(to_csv({{1.0, 2.0}}, kRaySchema), Error);
    CHECK_THROWS_AS(emit_csv({}, kRaySchema, fs::path("/nonexistent_dir_for_pleat/x.csv")), Error);
}

TEST_CASE("json documents") {
    CuspPoint cusp = cusp_point(S(0, 1), S(1, 0), kLn3);
    nlohmann::json j = to_json(cusp);
    CHECK(j["mu"] == "0/1");
    CHECK(j["nu"] == "1/0");
    CHECK(j["trace_sign"] == 2);
    CHECK(j["tau_im"].get<double>() == doctest::Approx(2.0 * std::numbers::pi / 3.0));

    LocatedGroup lg = locate_group(S(0, 1), S(1, 0), kLn3, 1.0);
    nlohmann::json g = to_json(lg);
    CHECK(g["schema_version"] == kSchemaVersion);
    CHECK(g["gen_a"].size() == 8);
    CHECK(g["gen_b"].size() == 8);

    nlohmann::json ds = to_json(bm_slice(S(0, 1), kLn3, 0));
    CHECK(ds["entries"].size() == 3);
    CHECK(ds["schema_version"] == kSchemaVersion);

    const fs::path p = scratch("cusp.json");
    emit_json(j, p);
    CHECK(nlohmann::json::parse(slurp(p)) == j);
}
