#include "pleat/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pleat/error.hpp"

namespace pleat {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string px(double v) { return fmt("%.3f", v); }

class SvgWriter {
public:
    explicit SvgWriter(const Viewport& vp) : vp_(vp) {
        vp.validate();
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.width_px << "\" height=\""
             << vp.height_px << "\" viewBox=\"0 0 " << vp.width_px << ' ' << vp.height_px << "\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"" << vp.width_px << "\" height=\"" << vp.height_px
             << "\" fill=\"white\"/>\n";
    }

    // Horizontal and vertical world axes, where they are visible.
    void axes(const char* color = "#888888") {
        if (vp_.y_min <= 0.0 && 0.0 <= vp_.y_max) line(vp_.x_min, 0.0, vp_.x_max, 0.0, color);
        if (vp_.x_min <= 0.0 && 0.0 <= vp_.x_max) line(0.0, vp_.y_min, 0.0, vp_.y_max, color);
    }

    void line(double x0, double y0, double x1, double y1, const char* color, double width = 1.0) {
        auto [a, b] = vp_.to_pixel(x0, y0);
        auto [c, d] = vp_.to_pixel(x1, y1);
        out_ << "<line x1=\"" << px(a) << "\" y1=\"" << px(b) << "\" x2=\"" << px(c) << "\" y2=\"" << px(d)
             << "\" stroke=\"" << color << "\" stroke-width=\"" << px(width) << "\"/>\n";
    }

    void polyline(const std::vector<cplx>& pts, const char* color, const char* fill = "none", bool closed = false) {
        if (pts.empty()) return;
        out_ << "<path d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto [x, y] = vp_.to_pixel(pts[i].real(), pts[i].imag());
            out_ << (i == 0 ? "M" : " L") << px(x) << ' ' << px(y);
        }
        if (closed) out_ << " Z";
        out_ << "\" fill=\"" << fill << "\" stroke=\"" << color << "\" stroke-width=\"1.000\"/>\n";
    }

    void dot(cplx p, double radius, const char* color) {
        auto [x, y] = vp_.to_pixel(p.real(), p.imag());
        out_ << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"" << px(radius) << "\" fill=\"" << color
             << "\"/>\n";
    }

    void text(double x, double y, const std::string& s) {
        out_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"monospace\" font-size=\"12\">" << s
             << "</text>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    const Viewport& vp_;
    std::ostringstream out_;
};

std::vector<cplx> ray_polyline(const RayTrace& ray) {
    std::vector<cplx> pts;
    pts.reserve(ray.samples.size() + 1);
    pts.push_back(cplx(ray.critical.t_star, 0.0));
    for (const RaySample& s : ray.samples) pts.push_back(s.tau);
    return pts;
}

nlohmann::json matrix_json(const Matrix2C& m) {
    return {m.a.real(), m.a.imag(), m.b.real(), m.b.imag(), m.c.real(), m.c.imag(), m.d.real(), m.d.imag()};
}

nlohmann::json complex_json(cplx z) { return {z.real(), z.imag()}; }

nlohmann::json ray_body(const RayTrace& ray) {
    nlohmann::json samples = nlohmann::json::array();
    for (const RaySample& s : ray.samples) {
        samples.push_back({{"re_tau", s.tau.real()},
                           {"im_tau", s.tau.imag()},
                           {"nu_trace", s.nu_trace},
                           {"nu_length", s.nu_length},
                           {"bending_angle", s.bending_angle},
                           {"jorgensen", s.jorgensen}});
    }
    return {{"mu", ray.mu.str()},
            {"nu", ray.nu.str()},
            {"c", ray.c},
            {"branch", ray.branch == Branch::Upper ? "upper" : "lower"},
            {"critical",
             {{"t_star", ray.critical.t_star}, {"f_value", ray.critical.f_value}, {"trace_nu", ray.critical.trace_nu}}},
            {"samples", samples},
            {"cusp", to_json(ray.cusp)}};
}

}  // namespace

void Viewport::validate() const {
    if (!(x_max > x_min) || !(y_max > y_min) || !std::isfinite(x_max - x_min) || !std::isfinite(y_max - y_min)) {
        throw Error(ErrorKind::Precondition, "viewport extent is degenerate");
    }
    if (width_px <= 0 || height_px <= 0) throw Error(ErrorKind::Precondition, "viewport size must be positive");
}

std::pair<double, double> Viewport::to_pixel(double x, double y) const {
    const double sx = width_px / (x_max - x_min);
    const double sy = height_px / (y_max - y_min);
    const double s = std::min(sx, sy);
    const double ox = 0.5 * (width_px - s * (x_max - x_min));
    const double oy = 0.5 * (height_px - s * (y_max - y_min));
    return {ox + s * (x - x_min), height_px - (oy + s * (y - y_min))};
}

Viewport fit_viewport(const std::vector<cplx>& points, int width_px, int height_px) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (cplx p : points) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) continue;
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    }
    if (!(x1 >= x0)) return Viewport{-1.0, 1.0, -1.0, 1.0, width_px, height_px};
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double m = 0.05 * span;
    if (x1 - x0 < 1e-9) x0 -= 0.5 * span, x1 += 0.5 * span;
    if (y1 - y0 < 1e-9) y0 -= 0.5 * span, y1 += 0.5 * span;
    return Viewport{x0 - m, x1 + m, y0 - m, y1 + m, width_px, height_px};
}

std::string svg_slice(const BMSliceDataset& ds, const Viewport& vp) {
    SvgWriter svg(vp);
    svg.axes();
    for (const SliceEntry& e : ds.entries) svg.polyline(ray_polyline(e.ray), "#1f4e79");
    for (const SliceEntry& e : ds.entries) svg.dot(e.ray.cusp.tau, 2.5, "#b22222");
    svg.text(8.0, 16.0, "mu " + ds.mu.str() + "  c " + fmt("%.6g", ds.c));
    return svg.finish();
}

std::string svg_ray(const RayTrace& ray, const Viewport& vp) {
    SvgWriter svg(vp);
    svg.axes();
    svg.polyline(ray_polyline(ray), "#1f4e79");
    svg.dot(cplx(ray.critical.t_star, 0.0), 2.5, "#2e7d32");
    svg.dot(ray.cusp.tau, 2.5, "#b22222");
    svg.text(8.0, 16.0, "mu " + ray.mu.str() + "  nu " + ray.nu.str() + "  c " + fmt("%.6g", ray.c));
    return svg.finish();
}

std::string svg_plane(const PleatingPlaneImage& img, const Viewport& vp) {
    SvgWriter svg(vp);
    svg.axes();
    if (!img.graph.empty()) {
        std::vector<cplx> region;
        region.emplace_back(img.graph.front().first, 0.0);
        for (auto [c, f] : img.graph) region.emplace_back(c, f);
        region.emplace_back(img.graph.back().first, 0.0);
        svg.polyline(region, "none", "#dce6f0", true);
        std::vector<cplx> graph;
        for (auto [c, f] : img.graph) graph.emplace_back(c, f);
        svg.polyline(graph, "#1f4e79");
    }
    for (const PlanePoint& p : img.located) svg.dot(cplx(p.c, p.d), 2.5, p.in_region ? "#2e7d32" : "#b22222");
    svg.text(8.0, 16.0, "mu " + img.mu.str() + "  nu " + img.nu.str());
    return svg.finish();
}

std::string svg_points(const std::vector<cplx>& points, const Viewport& vp) {
    SvgWriter svg(vp);
    for (cplx p : points) {
        if (std::isfinite(p.real()) && std::isfinite(p.imag())) svg.dot(p, 0.8, "#000000");
    }
    return svg.finish();
}

void emit_svg_slice(const BMSliceDataset& ds, const Viewport& vp, const std::filesystem::path& path) {
    write_file_atomic(path, svg_slice(ds, vp));
}

std::vector<cplx> limit_set_points(const MarkedGroup& g, int max_word_len) {
    if (max_word_len < 0) throw Error(ErrorKind::Precondition, "max_word_len must be non-negative");
    const FixedPoints fp = fixed_points(commutator(g.gen_a, g.gen_b));
    const SpherePoint seed = fp.attracting;

    std::vector<cplx> out;
    std::set<std::pair<long long, long long>> seen;
    auto record = [&](const SpherePoint& p) {
        if (p.at_infinity || !std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) return;
        const auto key = std::make_pair(std::llround(p.z.real() * 1e6), std::llround(p.z.imag() * 1e6));
        if (seen.insert(key).second) out.push_back(p.z);
    };
    record(seed);

    // Letters A, B, a, b; letter k + 2 (mod 4) is the inverse of letter k.
    const Matrix2C gens[4] = {g.gen_a, g.gen_b, g.gen_a.inverse(), g.gen_b.inverse()};
    struct Node {
        Matrix2C m;
        int last;
    };
    std::vector<Node> level{{Matrix2C::identity(), -1}};
    for (int len = 1; len <= max_word_len; ++len) {
        std::vector<Node> next;
        next.reserve(level.size() * 3);
        for (const Node& n : level) {
            for (int k = 0; k < 4; ++k) {
                if (n.last >= 0 && k == (n.last + 2) % 4) continue;
                Matrix2C m = n.m * gens[k];
                record(apply(m, seed));
                next.push_back({m, k});
            }
        }
        level = std::move(next);
    }
    return out;
}

CsvRows ray_rows(const RayTrace& ray) {
    CsvRows rows;
    rows.reserve(ray.samples.size());
    for (const RaySample& s : ray.samples) {
        rows.push_back({s.tau.real(), s.tau.imag(), s.nu_trace, s.nu_length, s.bending_angle});
    }
    return rows;
}

std::string to_csv(const CsvRows& rows, const CsvSchema& schema) {
    std::string out;
    for (std::size_t i = 0; i < schema.columns.size(); ++i) {
        if (i) out += ',';
        out += schema.columns[i];
    }
    out += '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != schema.columns.size()) {
            throw Error(ErrorKind::Precondition, "csv row " + std::to_string(r) + " has " +
                                                     std::to_string(rows[r].size()) + " fields, schema has " +
                                                     std::to_string(schema.columns.size()));
        }
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i) out += ',';
            out += fmt("%.17g", rows[r][i]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const CsvRows& rows, const CsvSchema& schema, const std::filesystem::path& path) {
    write_file_atomic(path, to_csv(rows, schema));
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    CsvTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (lineno == 1) {
            table.header = fields;
            continue;
        }
        std::vector<double> row;
        for (const std::string& f : fields) {
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0') {
                throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": bad number '" + f + "'");
            }
            row.push_back(v);
        }
        if (row.size() != table.header.size()) {
            throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": wrong field count");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

nlohmann::json to_json(const CuspPoint& cusp) {
    return {{"mu", cusp.mu.str()},         {"nu", cusp.nu.str()},          {"c", cusp.c},
            {"tau_re", cusp.tau.real()},   {"tau_im", cusp.tau.imag()},    {"trace_sign", cusp.trace_sign}};
}

nlohmann::json to_json(const RayTrace& ray) {
    nlohmann::json j = ray_body(ray);
    j["schema_version"] = kSchemaVersion;
    return j;
}

nlohmann::json to_json(const BMSliceDataset& ds) {
    nlohmann::json entries = nlohmann::json::array();
    for (const SliceEntry& e : ds.entries) {
        entries.push_back({{"nu", e.nu.str()}, {"jmap_bound", e.jmap_bound}, {"ray", ray_body(e.ray)}});
    }
    nlohmann::json diagnostics = nlohmann::json::array();
    for (const SliceDiagnostic& d : ds.diagnostics) {
        diagnostics.push_back({{"nu", d.nu.str()}, {"kind", std::string(to_string(d.kind))}, {"message", d.message}});
    }
    return {{"schema_version", kSchemaVersion},
            {"mu", ds.mu.str()},
            {"c", ds.c},
            {"depth", ds.depth},
            {"entries", entries},
            {"diagnostics", diagnostics}};
}

nlohmann::json to_json(const PleatingPlaneImage& img) {
    nlohmann::json graph = nlohmann::json::array();
    for (auto [c, f] : img.graph) graph.push_back({c, f});
    nlohmann::json located = nlohmann::json::array();
    for (const PlanePoint& p : img.located) {
        located.push_back({{"c", p.c},
                           {"d", p.d},
                           {"in_region", p.in_region},
                           {"tau_re", p.tau.real()},
                           {"tau_im", p.tau.imag()},
                           {"message", p.message}});
    }
    return {{"schema_version", kSchemaVersion},
            {"mu", img.mu.str()},
            {"nu", img.nu.str()},
            {"graph", graph},
            {"located", located}};
}

nlohmann::json to_json(const LocatedGroup& located) {
    const MarkedGroup& g = located.group;
    return {{"schema_version", kSchemaVersion},
            {"mu", located.point.mu.str()},
            {"c", located.point.c},
            {"tau_re", located.point.tau.real()},
            {"tau_im", located.point.tau.imag()},
            {"nu_length", located.nu_length},
            {"mark_mu", g.mark_mu.str()},
            {"mark_sigma", g.mark_sigma.str()},
            {"gen_a", matrix_json(g.gen_a)},
            {"gen_b", matrix_json(g.gen_b)},
            {"triple", {{"x", complex_json(g.triple.x)}, {"y", complex_json(g.triple.y)}, {"z", complex_json(g.triple.z)}}},
            {"elliptic_flag", g.elliptic_flag}};
}

nlohmann::json to_json(const std::vector<CuspPoint>& catalog) {
    nlohmann::json cusps = nlohmann::json::array();
    for (const CuspPoint& c : catalog) cusps.push_back(to_json(c));
    return {{"schema_version", kSchemaVersion}, {"cusps", cusps}};
}

void emit_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    write_file_atomic(path, doc.dump(2) + "\n");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot rename onto " + path.string());
    }
}

}  // namespace pleat
