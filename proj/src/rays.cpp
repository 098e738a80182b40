#include "pleat/rays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "pleat/traces.hpp"

namespace pleat {

namespace {

constexpr int kMaxNewton = 60;
constexpr int kMaxHalvings = 40;
constexpr double kPolishTol = 1e-12;

// Newton acceptance for target trace r: tol, unless r is so large that
// rounding in the recursion alone approaches it.
double accept_tolerance(double tol, double r) { return std::max(tol, 1e-13 * std::abs(r)); }

double length_of(double trace) { return trace <= 2.0 ? 0.0 : 2.0 * std::acosh(trace / 2.0); }

// Walks the branch of {Tr W_nu(tau) = r, r real} leaving the critical point,
// parameterized by w = sqrt(g* - r). Near the critical point
// g(tau) ~ g* + g''/2 (tau - t*)^2, so tau is analytic in w and a secant
// predictor in w stays accurate right from the start.
class Walker {
public:
    Walker(const QuakebendTrace& qt, const CriticalPoint& cp, Branch branch, double tol)
        : qt_(qt), g_star_(cp.trace_nu), g2_(cp.second_derivative), t_star_(cp.t_star),
          sign_(branch == Branch::Upper ? 1.0 : -1.0), tol_(tol), tau_(cp.t_star), tau_prev_(cp.t_star) {}

    const cplx& tau() const { return tau_; }
    double w() const { return w_; }

    // Move to the point with trace r (r < g*); false if halving gave out.
    bool advance_to(double r) {
        const double w_target = std::sqrt(std::max(0.0, g_star_ - r));
        double step = w_target - w_;
        int halvings = 0;
        while (w_ < w_target) {
            double w_next = std::min(w_target, w_ + step);
            if (w_target - w_next < 1e-12 * w_target) w_next = w_target;
            if (!(w_next > w_)) return false;
            const double r_next = (w_next == w_target) ? r : g_star_ - w_next * w_next;
            if (try_step(w_next, r_next)) {
                step *= 1.5;
                continue;
            }
            if (++halvings > kMaxHalvings) return false;
            step = 0.5 * (w_next - w_);
        }
        return true;
    }

    // Extra Newton iterations at r until the residual stops improving.
    double polish(double r, double target) {
        cplx tau = tau_;
        TraceDerivative gd = qt_.derivative(tau);
        double best = std::abs(gd.g - r);
        for (int k = 0; k < kMaxNewton && best > target; ++k) {
            const cplx next = tau - (gd.g - r) / gd.dg_dtau;
            const TraceDerivative nd = qt_.derivative(next);
            const double res = std::abs(nd.g - r);
            if (!(res < best)) break;
            tau = next;
            gd = nd;
            best = res;
        }
        tau_ = tau;
        return best;
    }

private:
    bool try_step(double w_next, double r) {
        cplx guess;
        if (w_ == 0.0) {
            guess = t_star_ + cplx{0.0, sign_ * w_next * std::sqrt(2.0 / g2_)};
        } else {
            guess = tau_ + (tau_ - tau_prev_) * ((w_next - w_) / (w_ - w_prev_));
        }
        const double accept = accept_tolerance(tol_, r);
        const double target = 1e-3 * accept;
        cplx tau = guess;
        double res = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kMaxNewton; ++k) {
            const TraceDerivative gd = qt_.derivative(tau);
            res = std::abs(gd.g - r);
            if (!std::isfinite(res)) return false;
            if (res <= target) break;
            const cplx delta = (gd.g - r) / gd.dg_dtau;
            if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) return false;
            tau -= delta;
            if (std::abs(delta) <= 1e-15 * (1.0 + std::abs(tau))) {
                res = std::abs(qt_.value(tau) - r);
                break;
            }
        }
        if (!(res <= accept)) return false;
        // Stay on this branch: the correction must be small against the step.
        const double stride = std::abs(guess - tau_);
        if (std::abs(tau - guess) > 0.5 * stride + 1e-12 * (1.0 + std::abs(tau))) return false;
        if (!(sign_ * tau.imag() > 0.0)) return false;
        tau_prev_ = tau_;
        w_prev_ = w_;
        tau_ = tau;
        w_ = w_next;
        return true;
    }

    const QuakebendTrace& qt_;
    double g_star_;
    double g2_;
    double t_star_;
    double sign_;
    double tol_;
    cplx tau_;
    cplx tau_prev_;
    double w_ = 0.0;
    double w_prev_ = 0.0;
};

void check_inputs(const Slope& mu, const Slope& nu, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::Precondition, "the length c must be positive and finite");
    }
    if (mu == nu) throw Error(ErrorKind::SameSlope, "nu must differ from mu (" + mu.str() + ")");
    if (intersection_number(mu, nu) == 0) {
        throw Error(ErrorKind::NoIntersection, mu.str() + " and " + nu.str() + " do not intersect");
    }
}

RaySample make_sample(const QuakebendTrace& qt, const Word& nu_word, cplx tau) {
    RaySample s;
    s.tau = tau;
    s.nu_trace = qt.value(tau).real();
    s.nu_length = length_of(s.nu_trace);
    s.bending_angle = std::abs(tau.imag());
    const MarkedGroup g = matrices_from_triple(qt.local_triple(tau));
    const Matrix2C w_nu = word_matrix(g, nu_word);
    s.jorgensen = std::min(jorgensen_value(g.gen_a, g.gen_b), jorgensen_value(g.gen_a, w_nu));
    return s;
}

}  // namespace

RayTrace trace_ray(const Slope& mu, const Slope& nu, double c, const RayOptions& options) {
    check_inputs(mu, nu, c);
    if (options.samples < 2) throw Error(ErrorKind::Precondition, "a ray needs at least 2 samples");
    if (!(options.tol > 0.0)) throw Error(ErrorKind::Precondition, "tol must be positive");

    RayTrace ray;
    ray.mu = mu;
    ray.nu = nu;
    ray.c = c;
    ray.branch = options.branch;
    ray.critical = critical_point(mu, nu, c);

    const QuakebendTrace qt(mu, c, nu);
    const Word nu_word = curve_word(qt.local_nu());
    const double g_star = ray.critical.trace_nu;
    const double f = ray.critical.f_value;
    const int n = options.samples;

    auto stalled = [&](double r) {
        throw RayStalled("continuation of " + nu.str() + " stalled near trace " + std::to_string(r), ray);
    };

    // First sample tol/2 below g*. When that is lost to rounding in g*,
    // fall back to half the (relative) Newton acceptance.
    std::optional<Walker> walker;
    for (double offset : {0.5 * options.tol, 0.5 * accept_tolerance(options.tol, g_star)}) {
        const double r = g_star - offset;
        walker.emplace(qt, ray.critical, options.branch, options.tol);
        if (r < g_star && walker->advance_to(r)) break;
        walker.reset();
    }
    if (!walker) stalled(g_star);

    for (int k = 0; k < n; ++k) {
        const double r = k == n - 1 ? 2.0 : 2.0 * std::cosh(0.5 * f * (1.0 - static_cast<double>(k) / (n - 1)));
        if (k > 0 && !walker->advance_to(r)) stalled(r);
        if (k == n - 1) {
            const double residual = walker->polish(2.0, kPolishTol);
            ray.cusp = {mu, nu, c, walker->tau(), 2, residual};
        }
        try {
            ray.samples.push_back(make_sample(qt, nu_word, walker->tau()));
        } catch (const Error& e) {
            throw RayStalled("continuation of " + nu.str() + " lost precision near trace " + std::to_string(r) + " (" +
                                 e.what() + ")",
                             ray);
        }
    }
    const RaySample& last = ray.samples.back();
    ray.cusp.trace_sign = last.nu_trace < 0.0 ? -2 : 2;
    return ray;
}

CuspPoint cusp_point(const Slope& mu, const Slope& nu, double c, double tol, Branch branch) {
    return trace_ray(mu, nu, c, {32, tol, branch}).cusp;
}

LocatedGroup locate_group(const Slope& mu, const Slope& nu, double c, double d) {
    check_inputs(mu, nu, c);
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::OutOfRegion, "d must be positive (got " + std::to_string(d) + ")");
    }
    const CriticalPoint cp = critical_point(mu, nu, c);
    if (d >= cp.f_value) {
        throw Error(ErrorKind::OutOfRegion, "d = " + std::to_string(d) + " is not below f(c) = " +
                                                std::to_string(cp.f_value) + " for " + mu.str() + ", " + nu.str());
    }
    const QuakebendTrace qt(mu, c, nu);
    const double tol = 1e-10;
    Walker walker(qt, cp, Branch::Upper, tol);
    const int steps = 24;
    for (int k = 1; k <= steps; ++k) {
        const double l = cp.f_value + (d - cp.f_value) * static_cast<double>(k) / steps;
        const double r = 2.0 * std::cosh(0.5 * l);
        if (!walker.advance_to(r)) {
            throw Error(ErrorKind::StalledContinuation, "could not reach l = " + std::to_string(d) + " on the ray of " +
                                                            mu.str() + ", " + nu.str() + " at c = " + std::to_string(c));
        }
    }
    const double r_d = 2.0 * std::cosh(0.5 * d);
    walker.polish(r_d, 1e-15 * r_d);

    LocatedGroup out;
    out.point = {mu, c, walker.tau()};
    out.group = matrices_from_triple(qt.local_triple(walker.tau()));
    out.group.fn = FNParams{cplx{c}, walker.tau()};
    out.group.mark_mu = qt.marking().mu();
    out.group.mark_sigma = qt.marking().sigma();
    out.nu_length = length_of(qt.value(walker.tau()).real());
    return out;
}

double bending_angle(const QuakebendPoint& p) { return std::abs(p.tau.imag()); }

std::pair<cplx, cplx> remeasure(const LocatedGroup& located, const Slope& nu) {
    const Marking marking = Marking::canonical(located.group.mark_mu);
    const Matrix2C w_nu = word_matrix(located.group, curve_word(marking.to_local(nu)));
    return {complex_length_from_trace(located.group.gen_a.trace()).value,
            complex_length_from_trace(w_nu.trace()).value};
}

}  // namespace pleat
