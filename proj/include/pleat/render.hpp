#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pleat/complexlen.hpp"
#include "pleat/fngroup.hpp"
#include "pleat/rays.hpp"
#include "pleat/slices.hpp"

namespace pleat {

inline constexpr int kSchemaVersion = 1;

/// World rectangle mapped onto a pixel canvas. The aspect ratio of the world
/// is kept; the slack goes to equal margins (letterboxing).
struct Viewport {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    int width_px = 800;
    int height_px = 600;

    void validate() const;
    // Pixel coordinates of a world point, y pointing down.
    std::pair<double, double> to_pixel(double x, double y) const;
};

// Smallest viewport (with a 5% margin) around the given points.
Viewport fit_viewport(const std::vector<cplx>& points, int width_px = 800, int height_px = 600);

std::string svg_slice(const BMSliceDataset& ds, const Viewport& vp);
std::string svg_ray(const RayTrace& ray, const Viewport& vp);
std::string svg_plane(const PleatingPlaneImage& img, const Viewport& vp);
std::string svg_points(const std::vector<cplx>& points, const Viewport& vp);

void emit_svg_slice(const BMSliceDataset& ds, const Viewport& vp, const std::filesystem::path& path);

/// Images of the commutator fixed point under every reduced word of length
/// <= max_word_len, in enumeration order, deduplicated on a 1e-6 grid.
std::vector<cplx> limit_set_points(const MarkedGroup& g, int max_word_len);

struct CsvSchema {
    std::vector<std::string> columns;
};

using CsvRows = std::vector<std::vector<double>>;

inline const CsvSchema kRaySchema{{"re_tau", "im_tau", "nu_trace", "nu_length", "bending_angle"}};

CsvRows ray_rows(const RayTrace& ray);

// Header line, then one line per row with %.17g fields.
std::string to_csv(const CsvRows& rows, const CsvSchema& schema);
void emit_csv(const CsvRows& rows, const CsvSchema& schema, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    CsvRows rows;
};

CsvTable read_csv(const std::filesystem::path& path);

nlohmann::json to_json(const CuspPoint& cusp);
nlohmann::json to_json(const RayTrace& ray);
nlohmann::json to_json(const BMSliceDataset& ds);
nlohmann::json to_json(const PleatingPlaneImage& img);
nlohmann::json to_json(const LocatedGroup& located);
nlohmann::json to_json(const std::vector<CuspPoint>& catalog);

// Pretty-printed JSON, written atomically.
void emit_json(const nlohmann::json& doc, const std::filesystem::path& path);

// Write to a sibling temporary file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace pleat
