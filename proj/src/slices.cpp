#include "pleat/slices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pleat/fuchsian.hpp"
#include "pleat/parallel.hpp"

namespace pleat {

namespace {

void check_slice_inputs(double c, int depth) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::Precondition, "the length c must be positive");
    if (depth < 0) throw Error(ErrorKind::Precondition, "depth must be non-negative");
}

std::vector<Slope> sweep_slopes(const Slope& mu, int depth, const std::optional<SlopeInterval>& sector) {
    std::vector<Slope> out;
    for (const Slope& s : stern_brocot_enumerate(depth, sector)) {
        if (s != mu) out.push_back(s);
    }
    return out;
}

// One slot per slope; exactly one of ray / error is filled.
struct Outcome {
    std::optional<RayTrace> ray;
    std::optional<SliceDiagnostic> error;
};

template <class Trace>
std::vector<Outcome> sweep(const std::vector<Slope>& slopes, unsigned workers, Trace&& trace) {
    std::vector<Outcome> out(slopes.size());
    parallel_for(slopes.size(), workers, [&](std::size_t i) {
        try {
            out[i].ray = trace(slopes[i]);
        } catch (const Error& e) {
            out[i].error = SliceDiagnostic{slopes[i], e.kind(), e.what()};
        }
    });
    return out;
}

}  // namespace

BMSliceDataset bm_slice(const Slope& mu, double c, int depth, const SliceOptions& options) {
    check_slice_inputs(c, depth);
    BMSliceDataset ds;
    ds.mu = mu;
    ds.c = c;
    ds.depth = depth;
    const auto slopes = sweep_slopes(mu, depth, options.sector);
    const RayOptions ray_options{options.samples, options.tol, Branch::Upper};
    auto outcomes = sweep(slopes, options.workers, [&](const Slope& nu) { return trace_ray(mu, nu, c, ray_options); });
    // slopes are already in order, so the merge is too
    for (auto& o : outcomes) {
        if (o.ray) {
            const double i = static_cast<double>(intersection_number(mu, o.ray->nu));
            const Slope nu = o.ray->nu;
            const double bound = o.ray->critical.f_value / i;
            ds.entries.push_back({nu, std::move(*o.ray), bound});
        } else {
            ds.diagnostics.push_back(std::move(*o.error));
        }
    }
    return ds;
}

JPoint jmap(const RaySample& sample, const Slope& mu, const Slope& nu) {
    const auto i = intersection_number(mu, nu);
    if (i == 0) throw Error(ErrorKind::NoIntersection, mu.str() + " and " + nu.str() + " do not intersect");
    return {nu.value(), sample.nu_length / static_cast<double>(i)};
}

PleatingPlaneImage pleating_plane(const Slope& mu, const Slope& nu, const std::vector<double>& c_grid,
                                  const std::vector<std::pair<double, double>>& locate_grid, unsigned workers) {
    if (intersection_number(mu, nu) == 0) {
        throw Error(ErrorKind::NoIntersection, mu.str() + " and " + nu.str() + " do not intersect");
    }
    PleatingPlaneImage img;
    img.mu = mu;
    img.nu = nu;
    for (const CriticalPoint& cp : critical_line(mu, nu, c_grid, workers)) img.graph.emplace_back(cp.c, cp.f_value);

    img.located.resize(locate_grid.size());
    parallel_for(locate_grid.size(), workers, [&](std::size_t k) {
        PlanePoint& p = img.located[k];
        p.c = locate_grid[k].first;
        p.d = locate_grid[k].second;
        try {
            p.tau = locate_group(mu, nu, p.c, p.d).point.tau;
            p.in_region = true;
        } catch (const Error& e) {
            p.message = e.what();
        }
    });
    return img;
}

std::vector<CuspPoint> qf_boundary_catalog(const Slope& mu, double c, int depth, const SliceOptions& options,
                                           std::vector<SliceDiagnostic>* diagnostics) {
    check_slice_inputs(c, depth);
    const auto slopes = sweep_slopes(mu, depth, options.sector);
    auto outcomes = sweep(slopes, options.workers, [&](const Slope& nu) {
        return trace_ray(mu, nu, c, {std::min(options.samples, 16), options.tol, Branch::Upper});
    });
    std::vector<CuspPoint> cusps;
    for (auto& o : outcomes) {
        if (o.ray) {
            cusps.push_back(o.ray->cusp);
        } else if (diagnostics) {
            diagnostics->push_back(std::move(*o.error));
        }
    }
    return cusps;
}

}  // namespace pleat
