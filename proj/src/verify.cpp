#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "pleat/cli.hpp"
#include "pleat/error.hpp"
#include "pleat/fngroup.hpp"
#include "pleat/fuchsian.hpp"
#include "pleat/rays.hpp"
#include "pleat/traces.hpp"

namespace pleat::cli {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult bounded(std::string name, double err, double limit) {
    return {std::move(name), err < limit, "error " + fmt(err) + " (limit " + fmt(limit) + ")"};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
    const Slope a = reduce_slope(0, 1), b = reduce_slope(1, 0);
    const double ln3 = std::log(3.0);
    std::vector<CheckResult> out;

    out.push_back(guarded("farey-intersection", [&] {
        const bool ok = intersection_number(a, b) == 1 && intersection_number(reduce_slope(2, 5), reduce_slope(1, 3)) == 1 &&
                        intersection_number(reduce_slope(1, 2), reduce_slope(2, 1)) == 3;
        return CheckResult{"farey-intersection", ok, ""};
    }));

    out.push_back(guarded("markov-identity", [&] {
        double worst = 0.0;
        for (double t : {-1.0, 0.0, 0.7}) {
            worst = std::max(worst, markov_residual(triple_from_fn({cplx(1.3), cplx(t, 0.4)})));
        }
        return bounded("markov-identity", worst, 1e-10);
    }));

    out.push_back(guarded("commutator-parabolic", [&] {
        const MarkedGroup g = matrices_from_triple(triple_from_fn({cplx(0.9), cplx(0.3, 0.5)}));
        const double err = std::abs(commutator(g.gen_a, g.gen_b).trace() + 2.0);
        return bounded("commutator-parabolic", err, 1e-9);
    }));

    out.push_back(guarded("critical-point", [&] {
        // The twist t -> -t swaps 1/1 and -1/1 and fixes 1/0, so t* = 0.
        const CriticalPoint cp = critical_point(a, b, ln3);
        return bounded("critical-point", std::abs(cp.t_star), 1e-9);
    }));

    out.push_back(guarded("generator-cusp", [&] {
        const CuspPoint cusp = cusp_point(a, b, ln3);
        const double err = std::abs(cusp.tau - cplx(0.0, 2.0 * std::numbers::pi / 3.0));
        return bounded("generator-cusp", err, 1e-8);
    }));

    out.push_back(guarded("ray-endpoint", [&] {
        const RayTrace ray = trace_ray(a, reduce_slope(1, 2), 1.0, {16, 1e-10, Branch::Upper});
        return bounded("ray-endpoint", std::abs(ray.samples.back().nu_trace - 2.0), 1e-9);
    }));

    out.push_back(guarded("locate-remeasure", [&] {
        const Slope nu = reduce_slope(1, 1);
        const LocatedGroup lg = locate_group(a, nu, 1.2, 0.5);
        const auto [lm, ln] = remeasure(lg, nu);
        const double err = std::max(std::abs(lm - cplx(1.2)), std::abs(ln - cplx(0.5)));
        return bounded("locate-remeasure", err, 1e-8);
    }));

    return out;
}

}  // namespace pleat::cli
