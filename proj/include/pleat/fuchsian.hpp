#pragma once

#include <vector>

#include "pleat/farey.hpp"

namespace pleat {

/// A point of the earthquake path along mu with l_mu = c, at twist t,
/// together with the length data of nu there.
struct EarthquakeSample {
    Slope mu;
    Slope nu;
    double c = 0.0;
    double t = 0.0;
    double nu_trace = 0.0;
    double nu_length = 0.0;
};

/// Minimum of l_nu along the earthquake path of mu at l_mu = c. The twist
/// t_star is measured in the marking rebased so that mu is 0/1.
struct CriticalPoint {
    Slope mu;
    Slope nu;
    double c = 0.0;
    double t_star = 0.0;
    double f_value = 0.0;  // l_nu at t_star
    double trace_mu = 0.0;
    double trace_nu = 0.0;
    double first_derivative = 0.0;   // d Tr nu / dt at t_star
    double second_derivative = 0.0;  // > 0
};

// Tr W_nu on the earthquake path; real and > 2.
double earthquake_trace(const Slope& mu, double c, double t, const Slope& nu);
EarthquakeSample earthquake_sample(const Slope& mu, double c, double t, const Slope& nu);

CriticalPoint critical_point(const Slope& mu, const Slope& nu, double c);

// f_{mu,nu}(c), the length of nu at the critical point.
double f_value(const Slope& mu, const Slope& nu, double c);

// Critical data at each grid value; empty grid gives empty output.
std::vector<CriticalPoint> critical_line(const Slope& mu, const Slope& nu, const std::vector<double>& c_grid,
                                         unsigned workers = 1);

struct LaminationEstimate {
    double value = 0.0;  // f_{mu, nu_n}(c) / i(mu, nu_n) at the last convergent used
    Slope last;
    int terms_used = 0;
    bool converged = false;
};

// Normalized f for the projective lamination of slope x (typically
// irrational), from the continued-fraction convergents nu_n of x. Stops once
// successive normalized values differ by less than tol.
LaminationEstimate f_value_lamination(const Slope& mu, double x, double c, double tol = 1e-6, int max_terms = 30);

}  // namespace pleat
