#include "pleat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "pleat/error.hpp"
#include "pleat/fuchsian.hpp"
#include "pleat/parallel.hpp"
#include "pleat/rays.hpp"
#include "pleat/render.hpp"
#include "pleat/slices.hpp"
#include "pleat/traces.hpp"

namespace pleat::cli {

namespace {

struct FlagDoc {
    const char* key;
    const char* help;
};

// Every flag, in --help order.
const FlagDoc kFlags[] = {
    {"mu", "pleating slope mu as p/q (default 0/1)"},
    {"nu", "second slope nu as p/q (default 1/0)"},
    {"c", "length of mu: number, ln3 or 2asinh1 (default ln3)"},
    {"d", "target length of nu for locate/plane/limitset: number, ln3 or 2asinh1"},
    {"depth", "Stern-Brocot depth of slice and boundary sweeps (default 2)"},
    {"samples", "samples per ray (default 64)"},
    {"tol", "Newton tolerance on the nu-trace (default 1e-10)"},
    {"out", "output path, - for standard output (default -)"},
    {"format", "csv, json or svg; the default depends on the subcommand"},
    {"config", "key = value file read before the flags; flags win"},
    {"workers", "worker threads for sweeps (default: PLEAT_WORKERS or all cores)"},
    {"branch", "upper or lower ray branch (default upper)"},
    {"c-min", "first c of the critline/plane grid (default 0.1)"},
    {"c-max", "last c of the critline/plane grid (default 4)"},
    {"c-steps", "number of grid points (default 40)"},
    {"word-len", "maximal word length for limitset (default 6)"},
    {"suite", "verify suite name (default invariants)"},
};

const char* const kSubcommands[][2] = {
    {"ray", "trace a pleating ray from the critical point to the cusp"},
    {"cusp", "cusp group at the end of a ray"},
    {"locate", "group on the ray with l_nu = d"},
    {"critline", "f(c) and the critical twist over a grid of c"},
    {"plane", "pleating-plane image: graph of f and located points"},
    {"slice", "all rays of a BM-slice up to a depth"},
    {"boundary", "cusp catalog approximating the slice boundary"},
    {"limitset", "limit-set point cloud of a located or Fuchsian group"},
    {"verify", "run a self-check suite"},
};

int to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    int out = 0;
    try {
        out = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw Error(ErrorKind::Parse, key + ": not an integer: '" + v + "'");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') throw Error(ErrorKind::Parse, key + ": not a number: '" + v + "'");
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::vector<std::string>& allowed_formats(const std::string& sub) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"ray", {"csv", "json", "svg"}},     {"cusp", {"json", "csv"}},        {"locate", {"json"}},
        {"critline", {"csv", "json"}},       {"plane", {"json", "csv", "svg"}}, {"slice", {"json", "csv", "svg"}},
        {"boundary", {"json", "csv"}},       {"limitset", {"csv", "svg", "json"}}, {"verify", {"text"}},
    };
    return table.at(sub);
}

class Output {
public:
    Output(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void write(const std::string& content) const {
        if (cfg_.out == "-" || cfg_.out.empty()) {
            out_ << content;
        } else {
            write_file_atomic(cfg_.out, content);
        }
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
};

std::vector<double> c_grid(const RunConfig& cfg) {
    if (cfg.c_steps < 1) throw Error(ErrorKind::Precondition, "c-steps must be at least 1");
    std::vector<double> grid;
    for (int k = 0; k < cfg.c_steps; ++k) {
        const double t = cfg.c_steps == 1 ? 0.0 : static_cast<double>(k) / (cfg.c_steps - 1);
        grid.push_back(cfg.c_min + t * (cfg.c_max - cfg.c_min));
    }
    return grid;
}

std::string slope_cols(const Slope& s) {
    return std::to_string(s.p()) + "," + std::to_string(s.q());
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<cplx> ray_points(const RayTrace& ray) {
    std::vector<cplx> pts{cplx(ray.critical.t_star, 0.0)};
    for (const RaySample& s : ray.samples) pts.push_back(s.tau);
    return pts;
}

std::string render_ray(const RayTrace& ray, const std::string& format) {
    if (format == "csv") return to_csv(ray_rows(ray), kRaySchema);
    if (format == "svg") return svg_ray(ray, fit_viewport(ray_points(ray)));
    return to_json(ray).dump(2) + "\n";
}

std::string render_cusps(const std::vector<CuspPoint>& cusps, const std::string& format) {
    if (format == "csv") {
        std::string s = "nu_p,nu_q,tau_re,tau_im,trace_sign\n";
        for (const CuspPoint& c : cusps) {
            s += slope_cols(c.nu) + "," + g17(c.tau.real()) + "," + g17(c.tau.imag()) + "," +
                 std::to_string(c.trace_sign) + "\n";
        }
        return s;
    }
    return to_json(cusps).dump(2) + "\n";
}

int run_ray(const RunConfig& cfg, const Output& out, const std::string& format, std::ostream& err) {
    const Branch branch = cfg.branch == "lower" ? Branch::Lower : Branch::Upper;
    try {
        out.write(render_ray(trace_ray(cfg.mu, cfg.nu, cfg.c, {cfg.samples, cfg.tol, branch}), format));
        return 0;
    } catch (const RayStalled& e) {
        err << e.what() << "\n" << "partial ray: " << e.partial().samples.size() << " samples\n";
        const RayTrace& partial = e.partial();
        if (format == "csv") out.write(to_csv(ray_rows(partial), kRaySchema));
        else if (format == "json") out.write(to_json(partial).dump(2) + "\n");
        return 2;
    }
}

int run_cusp(const RunConfig& cfg, const Output& out, const std::string& format) {
    const Branch branch = cfg.branch == "lower" ? Branch::Lower : Branch::Upper;
    const CuspPoint cusp = cusp_point(cfg.mu, cfg.nu, cfg.c, cfg.tol, branch);
    if (format == "csv") {
        out.write(render_cusps({cusp}, "csv"));
    } else {
        nlohmann::json j = to_json(cusp);
        j["schema_version"] = kSchemaVersion;
        out.write(j.dump(2) + "\n");
    }
    return 0;
}

int run_locate(const RunConfig& cfg, const Output& out) {
    if (!cfg.has_d) throw Error(ErrorKind::Precondition, "locate needs --d");
    out.write(to_json(locate_group(cfg.mu, cfg.nu, cfg.c, cfg.d)).dump(2) + "\n");
    return 0;
}

int run_critline(const RunConfig& cfg, const Output& out, const std::string& format) {
    const auto line = critical_line(cfg.mu, cfg.nu, c_grid(cfg), cfg.workers);
    if (format == "json") {
        nlohmann::json pts = nlohmann::json::array();
        for (const CriticalPoint& cp : line) {
            pts.push_back({{"c", cp.c}, {"t_star", cp.t_star}, {"f_value", cp.f_value}, {"trace_nu", cp.trace_nu}});
        }
        out.write(nlohmann::json{{"schema_version", kSchemaVersion},
                                 {"mu", cfg.mu.str()},
                                 {"nu", cfg.nu.str()},
                                 {"points", pts}}
                      .dump(2) +
                  "\n");
        return 0;
    }
    CsvRows rows;
    for (const CriticalPoint& cp : line) rows.push_back({cp.c, cp.t_star, cp.f_value, cp.trace_nu});
    out.write(to_csv(rows, CsvSchema{{"c", "t_star", "f_value", "trace_nu"}}));
    return 0;
}

int run_plane(const RunConfig& cfg, const Output& out, const std::string& format) {
    std::vector<std::pair<double, double>> locate;
    if (cfg.has_d) locate.emplace_back(cfg.c, cfg.d);
    const PleatingPlaneImage img = pleating_plane(cfg.mu, cfg.nu, c_grid(cfg), locate, cfg.workers);
    if (format == "csv") {
        CsvRows rows;
        for (auto [c, f] : img.graph) rows.push_back({c, f});
        out.write(to_csv(rows, CsvSchema{{"c", "f_value"}}));
    } else if (format == "svg") {
        std::vector<cplx> pts{cplx(0.0, 0.0)};
        for (auto [c, f] : img.graph) pts.emplace_back(c, f);
        for (const PlanePoint& p : img.located) pts.emplace_back(p.c, p.d);
        out.write(svg_plane(img, fit_viewport(pts)));
    } else {
        out.write(to_json(img).dump(2) + "\n");
    }
    return 0;
}

SliceOptions slice_options(const RunConfig& cfg) {
    SliceOptions opt;
    opt.samples = cfg.samples;
    opt.tol = cfg.tol;
    opt.workers = cfg.workers;
    return opt;
}

int report_diagnostics(const std::vector<SliceDiagnostic>& diags, std::ostream& err) {
    for (const SliceDiagnostic& d : diags) err << d.nu.str() << ": " << d.message << "\n";
    return diags.empty() ? 0 : 2;
}

int run_slice(const RunConfig& cfg, const Output& out, const std::string& format, std::ostream& err) {
    const BMSliceDataset ds = bm_slice(cfg.mu, cfg.c, cfg.depth, slice_options(cfg));
    if (format == "csv") {
        std::string s = "nu_p,nu_q,re_tau,im_tau,nu_trace,nu_length,bending_angle\n";
        for (const SliceEntry& e : ds.entries) {
            for (const RaySample& r : e.ray.samples) {
                s += slope_cols(e.nu) + "," + g17(r.tau.real()) + "," + g17(r.tau.imag()) + "," + g17(r.nu_trace) +
                     "," + g17(r.nu_length) + "," + g17(r.bending_angle) + "\n";
            }
        }
        out.write(s);
    } else if (format == "svg") {
        std::vector<cplx> pts{cplx(0.0, 0.0)};
        for (const SliceEntry& e : ds.entries) {
            for (cplx p : ray_points(e.ray)) pts.push_back(p);
        }
        out.write(svg_slice(ds, fit_viewport(pts)));
    } else {
        out.write(to_json(ds).dump(2) + "\n");
    }
    return report_diagnostics(ds.diagnostics, err);
}

int run_boundary(const RunConfig& cfg, const Output& out, const std::string& format, std::ostream& err) {
    std::vector<SliceDiagnostic> diags;
    const auto cusps = qf_boundary_catalog(cfg.mu, cfg.c, cfg.depth, slice_options(cfg), &diags);
    out.write(render_cusps(cusps, format));
    return report_diagnostics(diags, err);
}

int run_limitset(const RunConfig& cfg, const Output& out, const std::string& format) {
    MarkedGroup g;
    if (cfg.has_d) {
        g = locate_group(cfg.mu, cfg.nu, cfg.c, cfg.d).group;
    } else {
        // Fuchsian group at the critical point of the earthquake path.
        const CriticalPoint cp = critical_point(cfg.mu, cfg.nu, cfg.c);
        g = matrices_from_triple(QuakebendTrace(cfg.mu, cfg.c, cfg.nu).local_triple(cp.t_star));
    }
    const std::vector<cplx> pts = limit_set_points(g, cfg.word_len);
    if (format == "svg") {
        out.write(svg_points(pts, fit_viewport(pts, 800, 800)));
    } else if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (cplx p : pts) arr.push_back({p.real(), p.imag()});
        out.write(nlohmann::json{{"schema_version", kSchemaVersion}, {"points", arr}}.dump(2) + "\n");
    } else {
        CsvRows rows;
        for (cplx p : pts) rows.push_back({p.real(), p.imag()});
        out.write(to_csv(rows, CsvSchema{{"re", "im"}}));
    }
    return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.suite != "invariants") throw Error(ErrorKind::Precondition, "unknown suite '" + cfg.suite + "'");
    bool ok = true;
    for (const CheckResult& r : run_invariant_suite()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << ": " << r.detail;
        out << "\n";
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

std::unique_ptr<CLI::App> make_app(std::map<std::string, std::string>& raw) {
    auto app = std::make_unique<CLI::App>(
        "pleat: pleating rays, BM-slices and cusp groups of quasifuchsian punctured tori", "pleat");
    for (const FlagDoc& f : kFlags) app->add_option(std::string("--") + f.key, raw[f.key], f.help);
    for (const auto& sub : kSubcommands) app->add_subcommand(sub[0], sub[1])->fallthrough();
    app->require_subcommand(1);
    return app;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const FlagDoc& f : kFlags) {
            if (std::string(f.key) != "config") k.push_back(f.key);
        }
        return k;
    }();
    return keys;
}

double parse_length(const std::string& text) {
    if (text == "ln3") return std::log(3.0);
    if (text == "2asinh1") return 2.0 * std::asinh(1.0);
    return to_double("length", text);
}

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "subcommand") cfg.subcommand = value;
        else if (key == "mu") cfg.mu = Slope::parse(value);
        else if (key == "nu") cfg.nu = Slope::parse(value);
        else if (key == "c") cfg.c = parse_length(value);
        else if (key == "d") {
            cfg.d = parse_length(value);
            cfg.has_d = true;
        }
        else if (key == "depth") cfg.depth = to_int(key, value);
        else if (key == "samples") cfg.samples = to_int(key, value);
        else if (key == "tol") cfg.tol = to_double(key, value);
        else if (key == "out") cfg.out = value;
        else if (key == "format") cfg.format = value;
        else if (key == "branch") {
            if (value != "upper" && value != "lower") throw Error(ErrorKind::Parse, "branch must be upper or lower");
            cfg.branch = value;
        }
        else if (key == "workers") {
            const int w = to_int(key, value);
            if (w < 1) throw Error(ErrorKind::Parse, "workers must be at least 1");
            cfg.workers = static_cast<unsigned>(w);
        }
        else if (key == "c-min") cfg.c_min = parse_length(value);
        else if (key == "c-max") cfg.c_max = parse_length(value);
        else if (key == "c-steps") cfg.c_steps = to_int(key, value);
        else if (key == "word-len") cfg.word_len = to_int(key, value);
        else if (key == "suite") cfg.suite = value;
        else throw Error(ErrorKind::Parse, "unknown key '" + key + "'");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        throw Error(ErrorKind::Parse, key + ": " + e.what());
    }
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    RunConfig cfg;
    cfg.workers = default_workers();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::Parse, where + "missing key");
        try {
            set_field(cfg, key, value);
        } catch (const Error& e) {
            throw Error(ErrorKind::Parse, where + e.what());
        }
    }
    return cfg;
}

std::string help_text() {
    std::map<std::string, std::string> raw;
    return make_app(raw)->help();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::map<std::string, std::string> raw;
    auto app_ptr = make_app(raw);
    CLI::App& app = *app_ptr;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "pleat: " << e.what() << "\n" << "run with --help for usage\n";
        return 1;
    }

    try {
        RunConfig cfg;
        cfg.workers = default_workers();
        if (app.count("--config") > 0) cfg = parse_config(raw["config"]);
        for (const std::string& key : config_keys()) {
            if (app.count("--" + key) > 0) set_field(cfg, key, raw[key]);
        }
        cfg.subcommand = app.get_subcommands().front()->get_name();

        const auto& formats = allowed_formats(cfg.subcommand);
        std::string format = cfg.format.empty() ? formats.front() : cfg.format;
        if (cfg.subcommand != "verify" && std::find(formats.begin(), formats.end(), format) == formats.end()) {
            throw Error(ErrorKind::Precondition, cfg.subcommand + " cannot write format '" + format + "'");
        }
        const Output output(cfg, out);
        const std::string& sub = cfg.subcommand;
        if (sub == "ray") return run_ray(cfg, output, format, err);
        if (sub == "cusp") return run_cusp(cfg, output, format);
        if (sub == "locate") return run_locate(cfg, output);
        if (sub == "critline") return run_critline(cfg, output, format);
        if (sub == "plane") return run_plane(cfg, output, format);
        if (sub == "slice") return run_slice(cfg, output, format, err);
        if (sub == "boundary") return run_boundary(cfg, output, format, err);
        if (sub == "limitset") return run_limitset(cfg, output, format);
        return run_verify(cfg, out);
    } catch (const Error& e) {
        err << "pleat: " << e.what() << "\n";
        return e.is_numeric() ? 2 : 1;
    } catch (const std::exception& e) {
        err << "pleat: " << e.what() << "\n";
        return 1;
    }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, out, err);
}

}  // namespace pleat::cli
