#pragma once

#include <cmath>
#include <complex>

namespace pleat {

/// Forward-mode dual number value + deriv*eps with eps^2 = 0. Nesting
/// Dual<Dual<T>> carries the second derivative as well.
template <class T>
struct Dual {
    T value{};
    T deriv{};

    Dual() = default;
    Dual(T v) : value(v), deriv{} {}  // NOLINT: constants lift implicitly
    Dual(T v, T d) : value(v), deriv(d) {}

    static Dual variable(T v) { return {v, T{1.0}}; }

    Dual& operator+=(const Dual& o) {
        value += o.value;
        deriv += o.deriv;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        value -= o.value;
        deriv -= o.deriv;
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        deriv = deriv * o.value + value * o.deriv;
        value *= o.value;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
        value /= o.value;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(const Dual& a) { return {-a.value, -a.deriv}; }

    friend Dual operator*(double s, const Dual& a) { return {s * a.value, s * a.deriv}; }
    friend Dual operator*(const Dual& a, double s) { return {a.value * s, a.deriv * s}; }
    friend Dual operator/(const Dual& a, double s) { return {a.value / s, a.deriv / s}; }
};

using DualComplex = Dual<std::complex<double>>;
using Dual2Complex = Dual<Dual<std::complex<double>>>;

template <class T>
Dual<T> cosh(const Dual<T>& u) {
    using std::cosh;
    using std::sinh;
    return {cosh(u.value), sinh(u.value) * u.deriv};
}

template <class T>
Dual<T> sinh(const Dual<T>& u) {
    using std::cosh;
    using std::sinh;
    return {sinh(u.value), cosh(u.value) * u.deriv};
}

template <class T>
Dual<T> tanh(const Dual<T>& u) {
    using std::tanh;
    T t = tanh(u.value);
    return {t, (T{1.0} - t * t) * u.deriv};
}

// Scalar helpers so generic code can read the plain value out of any nesting.
inline std::complex<double> primal(const std::complex<double>& z) { return z; }

template <class T>
std::complex<double> primal(const Dual<T>& d) {
    return primal(d.value);
}

}  // namespace pleat
