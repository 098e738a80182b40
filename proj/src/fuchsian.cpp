#include "pleat/fuchsian.hpp"

#include <cmath>
#include <limits>

#include "pleat/error.hpp"
#include "pleat/parallel.hpp"
#include "pleat/traces.hpp"

namespace pleat {

namespace {

constexpr double kMaxTwist = 1e6;

double length_from_real_trace(double g) { return 2.0 * std::acosh(g / 2.0); }

}  // namespace

double earthquake_trace(const Slope& mu, double c, double t, const Slope& nu) {
    return QuakebendTrace(mu, c, nu).value(t).real();
}

EarthquakeSample earthquake_sample(const Slope& mu, double c, double t, const Slope& nu) {
    double g = earthquake_trace(mu, c, t, nu);
    return {mu, nu, c, t, g, length_from_real_trace(g)};
}

CriticalPoint critical_point(const Slope& mu, const Slope& nu, double c) {
    if (intersection_number(mu, nu) == 0) {
        throw Error(ErrorKind::NoIntersection, mu.str() + " and " + nu.str() + " do not intersect");
    }
    const QuakebendTrace trace(mu, c, nu);
    auto slope_at = [&](double t) { return trace.derivative(t).dg_dtau.real(); };

    // Convexity plus divergence at both ends: walk downhill, doubling the step,
    // until the derivative changes sign.
    double lo = 0.0;
    double d_lo = slope_at(lo);
    double hi = lo;
    if (d_lo != 0.0) {
        const double dir = d_lo > 0.0 ? -1.0 : 1.0;
        double step = std::max(1.0, c);
        for (;;) {
            hi = lo + dir * step;
            double d_hi = slope_at(hi);
            if (!std::isfinite(d_hi) || std::abs(hi) > kMaxTwist) {
                throw Error(ErrorKind::StalledContinuation, "could not bracket the critical point of " + nu.str());
            }
            if ((d_hi > 0.0) != (d_lo > 0.0) || d_hi == 0.0) break;
            lo = hi;
            d_lo = d_hi;
            step *= 2.0;
        }
    }
    double a = std::min(lo, hi), b = std::max(lo, hi);

    // Safeguarded Newton on the derivative with the exact second derivative.
    double t = 0.5 * (a + b);
    if (a == b) t = a;
    TraceJet j = trace.jet(t);
    for (int iter = 0; iter < 200 && a < b; ++iter) {
        const double d1 = j.d1.real();
        const double d2 = j.d2.real();
        if (d1 == 0.0) break;
        if (d1 > 0.0) {
            b = t;
        } else {
            a = t;
        }
        double next = t - d1 / d2;
        if (!(d2 > 0.0) || !(next > a && next < b)) next = 0.5 * (a + b);
        const double step = std::abs(next - t);
        t = next;
        j = trace.jet(t);
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(t))) break;
    }

    CriticalPoint cp;
    cp.mu = mu;
    cp.nu = nu;
    cp.c = c;
    cp.t_star = t;
    cp.trace_nu = j.g.real();
    cp.first_derivative = j.d1.real();
    cp.second_derivative = j.d2.real();
    cp.trace_mu = 2.0 * std::cosh(c / 2.0);
    cp.f_value = length_from_real_trace(cp.trace_nu);
    return cp;
}

double f_value(const Slope& mu, const Slope& nu, double c) { return critical_point(mu, nu, c).f_value; }

std::vector<CriticalPoint> critical_line(const Slope& mu, const Slope& nu, const std::vector<double>& c_grid,
                                         unsigned workers) {
    std::vector<CriticalPoint> out(c_grid.size());
    parallel_for(c_grid.size(), workers, [&](std::size_t i) {
        if (!(c_grid[i] > 0.0)) {
            throw Error(ErrorKind::Precondition, "critical line grid values must be positive");
        }
        out[i] = critical_point(mu, nu, c_grid[i]);
    });
    return out;
}

LaminationEstimate f_value_lamination(const Slope& mu, double x, double c, double tol, int max_terms) {
    LaminationEstimate est;
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (const Slope& nu : convergents(x, max_terms)) {
        const auto i = intersection_number(mu, nu);
        if (i == 0) continue;
        double value = 0.0;
        try {
            value = f_value(mu, nu, c) / static_cast<double>(i);
        } catch (const Error&) {
            break;
        }
        if (!std::isfinite(value)) break;
        est.value = value;
        est.last = nu;
        ++est.terms_used;
        if (std::isfinite(previous) && std::abs(value - previous) < tol) {
            est.converged = true;
            break;
        }
        previous = value;
    }
    return est;
}

}  // namespace pleat
