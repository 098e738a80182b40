#include "pleat/fngroup.hpp"

#include <cmath>
#include <tuple>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_elliptic_trace(cplx t) { return std::abs(t.imag()) <= 1e-12 * (1.0 + std::abs(t)) && std::abs(t.real()) < 2.0; }

bool matches(const Matrix2C& a, const Matrix2C& b, const TraceTriple& t, double tol) {
    auto close = [&](cplx u, cplx v) { return std::abs(u - v) <= tol * (1.0 + std::abs(v)); };
    auto finite = [](const Matrix2C& m) {
        for (cplx v : {m.a, m.b, m.c, m.d}) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    };
    return finite(a) && finite(b) && close(a.trace(), t.x) && close(b.trace(), t.y) && close((a * b).trace(), t.z);
}

// Parabolic-commutator recipe: b is fixed, a is solved from the traces.
std::pair<Matrix2C, Matrix2C> recipe_generators(const TraceTriple& t) {
    const cplx ta = t.x, tb = t.y, tab = t.z;
    const cplx z0 = (tab - 2.0) * tb / (tb * tab - 2.0 * ta + 2.0 * kI * tab);
    Matrix2C a{ta / 2.0, (ta * tab - 2.0 * tb + 4.0 * kI) / ((2.0 * tab + 4.0) * z0),
               (ta * tab - 2.0 * tb - 4.0 * kI) * z0 / (2.0 * tab - 4.0), ta / 2.0};
    Matrix2C b{(tb - 2.0 * kI) / 2.0, tb / 2.0, tb / 2.0, (tb + 2.0 * kI) / 2.0};
    return {a, b};
}

// A = [[x, 1], [-1, 0]], B = [[0, s], [-1/s, y]] with s^2 + z s + 1 = 0.
std::pair<Matrix2C, Matrix2C> triangular_generators(const TraceTriple& t) {
    cplx s = (-t.z + std::sqrt(t.z * t.z - 4.0)) / 2.0;
    if (std::abs(s) < 1.0) s = 1.0 / s;  // the other root, away from zero
    Matrix2C a{t.x, 1.0, -1.0, 0.0};
    Matrix2C b{0.0, s, -1.0 / s, t.y};
    return {a, b};
}

}  // namespace

TraceTriple triple_from_fn(const FNParams& p) {
    if (!(p.lambda_v.real() > 0.0)) {
        throw Error(ErrorKind::Precondition, "Re lambda_v must be positive");
    }
    if (std::abs(std::tanh(p.lambda_v / 2.0)) < 1e-14) {
        throw Error(ErrorKind::DegenerateLength, "tanh(lambda_v/2) vanishes");
    }
    return fenchel_nielsen_triple(p.lambda_v, p.tau);
}

MarkedGroup matrices_from_triple(const TraceTriple& t, const TripleOptions& options) {
    const double residual = markov_residual(t);
    const double scale = 1.0 + std::abs(t.x * t.y * t.z);
    if (residual > options.residual_tolerance * scale) {
        throw Error(ErrorKind::Precondition,
                    "trace triple violates the Markov equation (residual " + std::to_string(residual) + ")");
    }
    auto [a, b] = recipe_generators(t);
    if (!matches(a, b, t, 1e-9)) {
        std::tie(a, b) = triangular_generators(t);
    }
    MarkedGroup g;
    g.gen_a = a.normalized();
    g.gen_b = b.normalized();
    g.triple = t;
    g.elliptic_flag = is_elliptic_trace(t.x) || is_elliptic_trace(t.y) || is_elliptic_trace(t.z);
    return g;
}

Remarking remark(const TraceTriple& base, const Slope& mu) {
    Marking m = Marking::canonical(mu);
    TraceTriple t{trace_of_slope(base, m.mu()), trace_of_slope(base, m.sigma()),
                  trace_of_slope(base, m.to_global(reduce_slope(1, 1)))};
    return {t, m};
}

TraceTriple global_triple(const TraceTriple& local, const Marking& marking) {
    return {trace_of_slope(local, marking.to_local(reduce_slope(0, 1))),
            trace_of_slope(local, marking.to_local(reduce_slope(1, 0))),
            trace_of_slope(local, marking.to_local(reduce_slope(1, 1)))};
}

Matrix2C word_matrix(const MarkedGroup& g, const Word& w) {
    const Matrix2C a_inv = g.gen_a.inverse();
    const Matrix2C b_inv = g.gen_b.inverse();
    Matrix2C m = Matrix2C::identity();
    for (char ch : w.letters) {
        switch (ch) {
            case 'A': m = m * g.gen_a; break;
            case 'a': m = m * a_inv; break;
            case 'B': m = m * g.gen_b; break;
            case 'b': m = m * b_inv; break;
            default: throw Error(ErrorKind::Precondition, std::string("unknown generator letter '") + ch + "'");
        }
    }
    return m;
}

}  // namespace pleat
