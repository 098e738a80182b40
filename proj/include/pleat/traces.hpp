#pragma once

#include <complex>

#include "pleat/complexlen.hpp"
#include "pleat/dual.hpp"
#include "pleat/error.hpp"
#include "pleat/farey.hpp"

namespace pleat {

/// (Tr V, Tr W, Tr VW) of a marked generator pair.
template <class T>
struct BasicTriple {
    T x{}, y{}, z{};
};

using TraceTriple = BasicTriple<cplx>;

// |x^2 + y^2 + z^2 - xyz|; zero exactly when the commutator has trace -2.
double markov_residual(const TraceTriple& t);

// Root of z^2 - xyz + x^2 + y^2 = 0: branch > 0 takes (xy + sqrt(disc))/2.
cplx markov_complete(cplx x, cplx y, int branch);

/// Trace of the curve of slope s, from the base triple and z_inverse =
/// Tr VW^-1, by the Farey rule tr(L (+) R) = tr(L) tr(R) - tr(L - R) along
/// the Stern-Brocot path to s. Works for any scalar with ring arithmetic
/// (complex, Dual, ...).
///
/// Passing z_inverse explicitly avoids the cancellation in xy - z when that
/// trace is much smaller than xy.
template <class T>
T trace_of_slope(const BasicTriple<T>& base, const Slope& s, const T& z_inverse) {
    if (s.is_infinite()) return base.y;
    if (s.q() == 1 && s.p() == 0) return base.x;
    if (s.q() == 1 && s.p() == 1) return base.z;
    if (s.q() == 1 && s.p() == -1) return z_inverse;

    // On the negative side the words use W^-1, which swaps the roles of VW and VW^-1.
    const bool negative = s.p() < 0;
    const std::int64_t p = negative ? -s.p() : s.p();
    const std::int64_t q = s.q();

    // Interval endpoints as (p, q) pairs, with traces of L, R and of L R^-1.
    std::int64_t lp = 0, lq = 1, rp = 1, rq = 0;
    T tl = base.x;
    T tr = base.y;
    T td = negative ? base.z : z_inverse;
    for (;;) {
        const std::int64_t mp = lp + rp, mq = lq + rq;
        T tm = tl * tr - td;
        if (mp == p && mq == q) return tm;
        // s < m  <=>  p mq < mp q
        if (static_cast<__int128>(p) * mq < static_cast<__int128>(mp) * q) {
            td = tr;
            tr = tm;
            rp = mp;
            rq = mq;
        } else {
            td = tl;
            tl = tm;
            lp = mp;
            lq = mq;
        }
    }
}

// Tr VW^-1 = Tr V Tr W - Tr VW
template <class T>
T trace_of_slope(const BasicTriple<T>& base, const Slope& s) {
    return trace_of_slope(base, s, T{base.x * base.y - base.z});
}

/// Trace triple of the marked pair with complex length lambda of V and
/// twist-bend tau:
///   x = 2 cosh(lambda/2),
///   y = 2 cosh(tau/2) / tanh(lambda/2),
///   z = 2 cosh((tau + lambda)/2) / tanh(lambda/2).
template <class T>
BasicTriple<T> fenchel_nielsen_triple(const T& lambda, const T& tau) {
    const T half = lambda / 2.0;
    const T th = tanh(half);
    return {2.0 * cosh(half), 2.0 * cosh(tau / 2.0) / th, 2.0 * cosh((tau + lambda) / 2.0) / th};
}

struct TraceDerivative {
    cplx g;
    cplx dg_dtau;
};

struct TraceJet {
    cplx g;
    cplx d1;
    cplx d2;
};

/// Tr W_nu as a holomorphic function of the twist-bend tau in the quakebend
/// plane of mu with lambda_mu = c. The marking is rebased so mu is 0/1.
class QuakebendTrace {
public:
    QuakebendTrace(const Slope& mu, double c, const Slope& nu);

    const Marking& marking() const { return marking_; }
    const Slope& local_nu() const { return local_nu_; }
    double c() const { return c_; }

    cplx value(cplx tau) const;
    TraceDerivative derivative(cplx tau) const;
    TraceJet jet(cplx tau) const;

    // Triple of the rebased marking (mu, sigma) at tau.
    TraceTriple local_triple(cplx tau) const;

private:
    template <class T>
    T evaluate(const T& tau) const;

    Marking marking_;
    Slope local_nu_;
    double c_;
    cplx x_;
    cplx inv_tanh_;
};

TraceDerivative trace_and_derivative(const Slope& mu, double c, cplx tau, const Slope& nu);

}  // namespace pleat
