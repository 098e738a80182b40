#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pleat {

/// Reduced slope p/q in Q u {inf}, standing for a simple closed curve on the
/// once-punctured torus. q >= 0, gcd(|p|, q) = 1, and infinity is 1/0.
///
/// The curve of slope p/q has homology class q[A] + p[B] in the marking
/// (A, B): slope 0/1 is A, 1/0 is B and 1/1 is AB.
class Slope {
public:
    Slope() = default;

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }

    bool is_infinite() const { return q_ == 0; }
    // +inf for 1/0.
    double value() const;

    // "p/q"
    std::string str() const;
    static Slope parse(std::string_view text);

    // Homology vector (a, b) = (q, p), sign-normalized so that q >= 0.
    std::int64_t homology_a() const { return q_; }
    std::int64_t homology_b() const { return p_; }

    friend bool operator==(const Slope&, const Slope&) = default;

    friend Slope reduce_slope(std::int64_t p, std::int64_t q);

private:
    Slope(std::int64_t p, std::int64_t q) : p_(p), q_(q) {}

    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
};

Slope reduce_slope(std::int64_t p, std::int64_t q);

// Exact comparison by value; 1/0 sorts last.
bool slope_less(const Slope& a, const Slope& b);

struct SlopeOrder {
    bool operator()(const Slope& a, const Slope& b) const { return slope_less(a, b); }
};

// |p1 q2 - q1 p2|
std::int64_t intersection_number(const Slope& s1, const Slope& s2);

// Mediant of Farey neighbours; 1/0 counts as -1/0 next to a negative slope.
Slope mediant(const Slope& left, const Slope& right);

struct FareyParents {
    Slope left;        // smaller value (1/0 means -1/0 on the negative side)
    Slope right;       // larger value
    Slope difference;  // third Farey neighbour, (p_R - p_L)/(q_R - q_L)
};

// Throws BaseSlope for 0/1, 1/0, 1/1 and -1/1.
FareyParents farey_parents(const Slope& s);

bool is_base_slope(const Slope& s);

// Depth in the Stern-Brocot tree whose roots 0/1, 1/0, 1/1, -1/1 sit at depth 0.
int stern_brocot_depth(const Slope& s);

struct SlopeInterval {
    Slope lo;
    Slope hi;

    bool contains(const Slope& s) const;
};

std::vector<Slope> stern_brocot_enumerate(int depth, const std::optional<SlopeInterval>& sector = std::nullopt);

/// Cyclically reduced word in A, B with lowercase letters for inverses.
struct Word {
    std::string letters;

    std::size_t length() const { return letters.size(); }
    Word inverse() const;
    friend bool operator==(const Word&, const Word&) = default;
};

// Christoffel-type representative: W(left (+) right) = W(left) W(right) from
// W(0/1) = A, W(1/0) = B on the positive side and W(1/0) = B^-1 on the negative side.
Word curve_word(const Slope& s);

// Continued-fraction convergents p_k/q_k of x, at most max_terms of them.
std::vector<Slope> convergents(double x, int max_terms);

/// Change of marking taking a chosen slope mu to 0/1. The partner sigma has
/// i(mu, sigma) = 1 and is oriented so that det(mu, sigma) = +1 as homology
/// vectors, which makes (mu, sigma) the new (A, B).
class Marking {
public:
    // Canonical partner: the Stern-Brocot parent with smaller denominator,
    // ties toward smaller |p|. The base slopes pair 0/1 <-> 1/0 and
    // +-1/1 -> 1/0.
    static Marking canonical(const Slope& mu);
    static Marking identity() { return canonical(reduce_slope(0, 1)); }

    const Slope& mu() const { return mu_; }
    const Slope& sigma() const { return sigma_; }

    // Columns of the integer basis matrix: homology vectors of the new A and B.
    std::int64_t basis(int row, int col) const { return basis_[row][col]; }

    Slope to_local(const Slope& global) const;
    Slope to_global(const Slope& local) const;

private:
    Slope mu_;
    Slope sigma_;
    std::int64_t basis_[2][2] = {{1, 0}, {0, 1}};
};

}  // namespace pleat
