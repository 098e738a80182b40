#include "pleat/traces.hpp"

#include <cmath>

namespace pleat {

double markov_residual(const TraceTriple& t) {
    return std::abs(t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z);
}

cplx markov_complete(cplx x, cplx y, int branch) {
    if (x == cplx{0.0} && y == cplx{0.0}) {
        throw Error(ErrorKind::Precondition, "markov_complete needs x, y not both zero");
    }
    const cplx xy = x * y;
    const cplx root = std::sqrt(xy * xy - 4.0 * (x * x + y * y));
    return branch >= 0 ? (xy + root) / 2.0 : (xy - root) / 2.0;
}

QuakebendTrace::QuakebendTrace(const Slope& mu, double c, const Slope& nu)
    : marking_(Marking::canonical(mu)), local_nu_(marking_.to_local(nu)), c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::Precondition, "the length c must be positive and finite");
    }
    if (mu == nu) {
        throw Error(ErrorKind::SameSlope, "nu must differ from mu (" + mu.str() + ")");
    }
    x_ = 2.0 * std::cosh(c / 2.0);
    inv_tanh_ = 1.0 / std::tanh(c / 2.0);
}

template <class T>
T QuakebendTrace::evaluate(const T& tau) const {
    // A full twist tau -> tau + c is the Dehn twist W -> VW about mu, which
    // sends slope p/q to p/(q + p). Shifting tau into |Re tau| <= c/2 keeps
    // the base traces small; without it the Farey recursion cancels badly.
    const double shift = std::round(primal(tau).real() / c_);
    Slope s = local_nu_;
    T t = tau;
    if (shift != 0.0 && std::abs(shift) < 1e15) {
        const auto k = static_cast<std::int64_t>(shift);
        s = reduce_slope(local_nu_.p(), local_nu_.q() + k * local_nu_.p());
        t = tau - T{cplx{shift * c_}};
    }
    const T scale{inv_tanh_};
    const T y = 2.0 * cosh(t / 2.0) * scale;
    const T z = 2.0 * cosh((t + T{cplx{c_}}) / 2.0) * scale;
    const T z_inverse = 2.0 * cosh((t - T{cplx{c_}}) / 2.0) * scale;
    return trace_of_slope(BasicTriple<T>{T{x_}, y, z}, s, z_inverse);
}

cplx QuakebendTrace::value(cplx tau) const { return evaluate(tau); }

TraceDerivative QuakebendTrace::derivative(cplx tau) const {
    DualComplex g = evaluate(DualComplex::variable(tau));
    return {g.value, g.deriv};
}

TraceJet QuakebendTrace::jet(cplx tau) const {
    Dual2Complex t{DualComplex::variable(tau), DualComplex{cplx{1.0}}};
    Dual2Complex g = evaluate(t);
    return {g.value.value, g.value.deriv, g.deriv.deriv};
}

TraceTriple QuakebendTrace::local_triple(cplx tau) const {
    return {x_, 2.0 * std::cosh(tau / 2.0) * inv_tanh_, 2.0 * std::cosh((tau + c_) / 2.0) * inv_tanh_};
}

TraceDerivative trace_and_derivative(const Slope& mu, double c, cplx tau, const Slope& nu) {
    return QuakebendTrace(mu, c, nu).derivative(tau);
}

}  // namespace pleat
