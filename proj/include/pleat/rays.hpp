#pragma once

#include <vector>

#include "pleat/complexlen.hpp"
#include "pleat/error.hpp"
#include "pleat/farey.hpp"
#include "pleat/fngroup.hpp"
#include "pleat/fuchsian.hpp"

namespace pleat {

/// A point tau of the quakebend plane of mu at l_mu = c. tau is measured in
/// the canonical marking of mu (Marking::canonical), so for mu = 0/1 it is
/// the usual twist-bend of (A, B). The Fuchsian locus is Im tau = 0.
struct QuakebendPoint {
    Slope mu;
    double c = 0.0;
    cplx tau{};
};

// Im tau > 0 is the ray P_{mu,nu}; Im tau < 0 is its mirror image.
enum class Branch { Upper, Lower };

struct RaySample {
    cplx tau{};
    double nu_trace = 0.0;
    double nu_length = 0.0;
    double bending_angle = 0.0;
    // Smallest Jorgensen value over the generator pair and (W_mu, W_nu).
    double jorgensen = 0.0;
};

struct CuspPoint {
    Slope mu;
    Slope nu;
    double c = 0.0;
    cplx tau{};
    int trace_sign = 2;  // +2 or -2
    double residual = 0.0;  // |Tr W_nu(tau) - trace_sign|
};

struct RayTrace {
    Slope mu;
    Slope nu;
    double c = 0.0;
    Branch branch = Branch::Upper;
    CriticalPoint critical;
    std::vector<RaySample> samples;  // nu_trace strictly decreasing, last one at the cusp
    CuspPoint cusp;
};

// Thrown by the continuation when Newton cannot make progress even after
// repeated step halving; carries what was traced up to that point.
class RayStalled : public Error {
public:
    RayStalled(const std::string& what, RayTrace partial)
        : Error(ErrorKind::StalledContinuation, what), partial_(std::move(partial)) {}

    const RayTrace& partial() const noexcept { return partial_; }

private:
    RayTrace partial_;
};

struct RayOptions {
    int samples = 64;
    double tol = 1e-10;
    Branch branch = Branch::Upper;
};

/// Follow the real-trace locus of W_nu from the critical point of the
/// earthquake path out to the cusp where Tr W_nu = +-2.
///
/// Samples are placed uniformly in l_nu from f_{mu,nu}(c) down to 0. The
/// first one sits tol/2 below the critical trace; the last is the cusp,
/// polished to 1e-12.
RayTrace trace_ray(const Slope& mu, const Slope& nu, double c, const RayOptions& options = {});

CuspPoint cusp_point(const Slope& mu, const Slope& nu, double c, double tol = 1e-10,
                     Branch branch = Branch::Upper);

struct LocatedGroup {
    QuakebendPoint point;
    MarkedGroup group;  // in the canonical marking of mu, fn = (c, tau)
    double nu_length = 0.0;
};

/// The group on the ray P_{mu,nu,c} with l_nu = d. Requires 0 < d < f_{mu,nu}(c).
LocatedGroup locate_group(const Slope& mu, const Slope& nu, double c, double d);

// Bending angle per unit intersection with mu: |Im tau|.
double bending_angle(const QuakebendPoint& p);

// Complex lengths (l_mu, l_nu) read back from the matrices of a located group.
std::pair<cplx, cplx> remeasure(const LocatedGroup& located, const Slope& nu);

}  // namespace pleat
