#pragma once

#include <optional>

#include "pleat/complexlen.hpp"
#include "pleat/farey.hpp"
#include "pleat/traces.hpp"

namespace pleat {

/// Complex Fenchel-Nielsen coordinates relative to a marked pair (V, W):
/// complex length of V and twist-bend tau.
struct FNParams {
    cplx lambda_v{1.0};
    cplx tau{0.0};
};

struct MarkedGroup {
    Matrix2C gen_a;
    Matrix2C gen_b;
    TraceTriple triple;

    // Marking realized by (gen_a, gen_b): gen_a is the curve of slope
    // mark_mu and gen_b that of mark_sigma. fn, when present, is relative to
    // the same marking.
    std::optional<FNParams> fn;
    Slope mark_mu = reduce_slope(0, 1);
    Slope mark_sigma = reduce_slope(1, 0);

    // Set when a trace is real with modulus below 2 (an elliptic generator,
    // which cannot happen for a quasifuchsian group).
    bool elliptic_flag = false;
};

TraceTriple triple_from_fn(const FNParams& p);

struct TripleOptions {
    double residual_tolerance = 1e-9;
};

// Generators with traces (x, y, z) and commutator trace -2, in the
// "grandma" parabolic-commutator normalization. A triangular normalization
// takes over where that recipe divides by zero (z = +-2 and friends).
MarkedGroup matrices_from_triple(const TraceTriple& t, const TripleOptions& options = {});

struct Remarking {
    TraceTriple triple;  // (Tr W_mu, Tr W_sigma, Tr W_mu W_sigma)
    Marking marking;
};

Remarking remark(const TraceTriple& base, const Slope& mu);

// Triple of the standard marking (0/1, 1/0, 1/1) given the triple of a rebased marking.
TraceTriple global_triple(const TraceTriple& local, const Marking& marking);

// Matrix of a word in the generators.
Matrix2C word_matrix(const MarkedGroup& g, const Word& w);

}  // namespace pleat
