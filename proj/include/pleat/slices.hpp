#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pleat/error.hpp"
#include "pleat/farey.hpp"
#include "pleat/rays.hpp"

namespace pleat {

struct SliceEntry {
    Slope nu;
    RayTrace ray;
    double jmap_bound = 0.0;  // f_{mu,nu}(c) / i(mu, nu)
};

// A slope whose ray could not be traced, and why.
struct SliceDiagnostic {
    Slope nu;
    ErrorKind kind = ErrorKind::StalledContinuation;
    std::string message;
};

/// Rays of the BM-slice {l_mu = c} for a finite set of slopes nu. Entries
/// and diagnostics are sorted by slope.
struct BMSliceDataset {
    Slope mu;
    double c = 0.0;
    int depth = 0;
    std::vector<SliceEntry> entries;
    std::vector<SliceDiagnostic> diagnostics;
};

struct SliceOptions {
    int samples = 32;
    double tol = 1e-10;
    unsigned workers = 1;
    std::optional<SlopeInterval> sector;
};

// Every nu != mu of Stern-Brocot depth <= depth (within the sector, if
// given). A failed ray is recorded in diagnostics; the sweep goes on.
BMSliceDataset bm_slice(const Slope& mu, double c, int depth, const SliceOptions& options = {});

/// J-map coordinates of a ray sample: the slope of nu as a number (+inf for
/// 1/0) and l_nu / i(mu, nu).
struct JPoint {
    double slope_value = 0.0;
    double scaled_length = 0.0;
};

JPoint jmap(const RaySample& sample, const Slope& mu, const Slope& nu);

struct PlanePoint {
    double c = 0.0;
    double d = 0.0;
    bool in_region = false;
    cplx tau{};
    std::string message;  // reason when not located
};

struct PleatingPlaneImage {
    Slope mu;
    Slope nu;
    std::vector<std::pair<double, double>> graph;  // (c, f_{mu,nu}(c))
    std::vector<PlanePoint> located;
};

PleatingPlaneImage pleating_plane(const Slope& mu, const Slope& nu, const std::vector<double>& c_grid,
                                  const std::vector<std::pair<double, double>>& locate_grid = {},
                                  unsigned workers = 1);

/// Cusp groups of the slice boundary, one per slope, sorted by slope.
std::vector<CuspPoint> qf_boundary_catalog(const Slope& mu, double c, int depth, const SliceOptions& options = {},
                                           std::vector<SliceDiagnostic>* diagnostics = nullptr);

}  // namespace pleat
