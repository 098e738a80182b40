#include "pleat/farey.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "pleat/error.hpp"

namespace pleat {

namespace {

Slope negate(const Slope& s) { return reduce_slope(-s.p(), s.q()); }

// Descend the positive Stern-Brocot tree from (0/1, 1/0) to the positive slope s,
// calling visit(left, right) at the interval whose mediant is s.
template <class Visit>
void descend_positive(const Slope& s, Visit&& visit) {
    Slope left = reduce_slope(0, 1);
    Slope right = reduce_slope(1, 0);
    for (;;) {
        Slope m = mediant(left, right);
        if (m == s) {
            visit(left, right);
            return;
        }
        if (slope_less(s, m)) {
            right = m;
        } else {
            left = m;
        }
    }
}

void generate(const Slope& l, const Slope& r, int level, int max_level, std::vector<Slope>& out) {
    if (level > max_level) return;
    Slope m = mediant(l, r);
    out.push_back(m);
    generate(l, m, level + 1, max_level, out);
    generate(m, r, level + 1, max_level, out);
}

}  // namespace

Slope reduce_slope(std::int64_t p, std::int64_t q) {
    if (p == 0 && q == 0) {
        throw Error(ErrorKind::ZeroSlopePair, "(0, 0) is not a slope");
    }
    std::int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return Slope(p, q);
}

double Slope::value() const {
    if (q_ == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(p_) / static_cast<double>(q_);
}

std::string Slope::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

Slope Slope::parse(std::string_view text) {
    auto fail = [&]() -> Slope {
        throw Error(ErrorKind::Parse, "cannot parse slope '" + std::string(text) + "', expected p/q");
    };
    auto slash = text.find('/');
    std::int64_t p = 0;
    std::int64_t q = 1;
    auto parse_int = [&](std::string_view part, std::int64_t& v) {
        if (part.empty()) return false;
        if (part.front() == '+') part.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        return ec == std::errc() && ptr == part.data() + part.size();
    };
    if (slash == std::string_view::npos) {
        if (!parse_int(text, p)) return fail();
    } else {
        if (!parse_int(text.substr(0, slash), p) || !parse_int(text.substr(slash + 1), q)) return fail();
    }
    return reduce_slope(p, q);
}

bool slope_less(const Slope& a, const Slope& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    // q > 0 on both sides, so cross-multiplication preserves order.
    return static_cast<__int128>(a.p()) * b.q() < static_cast<__int128>(b.p()) * a.q();
}

std::int64_t intersection_number(const Slope& s1, const Slope& s2) {
    __int128 d = static_cast<__int128>(s1.p()) * s2.q() - static_cast<__int128>(s1.q()) * s2.p();
    return static_cast<std::int64_t>(d < 0 ? -d : d);
}

bool is_base_slope(const Slope& s) { return s.q() == 0 || (s.q() == 1 && s.p() >= -1 && s.p() <= 1); }

Slope mediant(const Slope& left, const Slope& right) {
    std::int64_t lp = left.p(), rp = right.p();
    // On the negative side 1/0 stands for -1/0.
    if (left.is_infinite() && rp < 0) lp = -1;
    if (right.is_infinite() && lp < 0) rp = -1;
    return reduce_slope(lp + rp, left.q() + right.q());
}

FareyParents farey_parents(const Slope& s) {
    if (is_base_slope(s)) {
        throw Error(ErrorKind::BaseSlope, s.str() + " is a root of the Farey tree");
    }
    const bool negative = s.p() < 0;
    const Slope target = negative ? negate(s) : s;
    Slope left, right;
    descend_positive(target, [&](const Slope& l, const Slope& r) {
        left = l;
        right = r;
    });
    if (!negative) {
        return {left, right, reduce_slope(right.p() - left.p(), right.q() - left.q())};
    }
    // Negation reverses the order; 1/0 then plays the role of -1/0 on the left.
    Slope diff = reduce_slope(left.p() - right.p(), right.q() - left.q());
    return {negate(right), negate(left), diff};
}

int stern_brocot_depth(const Slope& s) {
    if (is_base_slope(s)) return 0;
    std::int64_t p = s.p() < 0 ? -s.p() : s.p();
    std::int64_t q = s.q();
    std::int64_t sum = 0;
    while (q != 0) {
        sum += p / q;
        std::int64_t r = p % q;
        p = q;
        q = r;
    }
    return static_cast<int>(sum - 1);
}

bool SlopeInterval::contains(const Slope& s) const { return !slope_less(s, lo) && !slope_less(hi, s); }

std::vector<Slope> stern_brocot_enumerate(int depth, const std::optional<SlopeInterval>& sector) {
    if (depth < 0) {
        throw Error(ErrorKind::Precondition, "depth must be nonnegative");
    }
    const Slope zero = reduce_slope(0, 1);
    const Slope one = reduce_slope(1, 1);
    const Slope inf = reduce_slope(1, 0);

    std::vector<Slope> positive;
    generate(zero, one, 1, depth, positive);
    generate(one, inf, 1, depth, positive);

    std::vector<Slope> all = {zero, inf, one, reduce_slope(-1, 1)};
    all.reserve(4 + 2 * positive.size());
    for (const Slope& s : positive) {
        all.push_back(s);
        all.push_back(negate(s));
    }
    if (sector) {
        std::erase_if(all, [&](const Slope& s) { return !sector->contains(s); });
    }
    std::sort(all.begin(), all.end(), SlopeOrder{});
    return all;
}

Word Word::inverse() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        char ch = *it;
        out.letters.push_back(std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                                            : static_cast<char>(std::tolower(ch)));
    }
    return out;
}

Word curve_word(const Slope& s) {
    if (s.q() == 1 && s.p() == 0) return {"A"};
    if (s.is_infinite()) return {"B"};
    const bool negative = s.p() < 0;
    const Slope target = negative ? negate(s) : s;

    struct Node {
        Slope slope;
        std::string word;
    };
    Node left{reduce_slope(0, 1), "A"};
    Node right{reduce_slope(1, 0), "B"};
    std::string word;
    for (;;) {
        Node m{mediant(left.slope, right.slope), left.word + right.word};
        if (m.slope == target) {
            word = std::move(m.word);
            break;
        }
        if (slope_less(target, m.slope)) {
            right = std::move(m);
        } else {
            left = std::move(m);
        }
    }
    if (negative) std::replace(word.begin(), word.end(), 'B', 'b');
    return {word};
}

std::vector<Slope> convergents(double x, int max_terms) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::Precondition, "convergents need a finite value");
    }
    std::vector<Slope> out;
    // h_k = a_k h_{k-1} + h_{k-2}, same for k.
    std::int64_t h_prev = 1, h_prev2 = 0;
    std::int64_t k_prev = 0, k_prev2 = 1;
    double rest = x;
    constexpr double kLimit = 9.0e15;
    for (int i = 0; i < max_terms; ++i) {
        double a = std::floor(rest);
        double h = a * static_cast<double>(h_prev) + static_cast<double>(h_prev2);
        double k = a * static_cast<double>(k_prev) + static_cast<double>(k_prev2);
        if (std::abs(h) > kLimit || std::abs(k) > kLimit) break;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t hn = ai * h_prev + h_prev2;
        std::int64_t kn = ai * k_prev + k_prev2;
        out.push_back(reduce_slope(hn, kn));
        h_prev2 = h_prev;
        h_prev = hn;
        k_prev2 = k_prev;
        k_prev = kn;

        double frac = rest - a;
        if (std::abs(x - static_cast<double>(hn) / static_cast<double>(kn)) <= 4.0 * 2.2e-16 * std::abs(x) ||
            frac <= 1e-12) {
            break;
        }
        rest = 1.0 / frac;
    }
    return out;
}

Marking Marking::canonical(const Slope& mu) {
    const Slope zero = reduce_slope(0, 1);
    const Slope inf = reduce_slope(1, 0);
    Slope sigma;
    if (mu == zero) {
        sigma = inf;
    } else if (mu == inf) {
        sigma = zero;
    } else if (is_base_slope(mu)) {
        sigma = inf;
    } else {
        FareyParents parents = farey_parents(mu);
        auto key = [](const Slope& s) {
            return std::pair{s.q(), s.p() < 0 ? -s.p() : s.p()};
        };
        sigma = key(parents.left) <= key(parents.right) ? parents.left : parents.right;
    }

    Marking m;
    m.mu_ = mu;
    m.sigma_ = sigma;
    std::int64_t ua = mu.homology_a(), ub = mu.homology_b();
    std::int64_t sa = sigma.homology_a(), sb = sigma.homology_b();
    std::int64_t det = ua * sb - ub * sa;
    if (det == -1) {
        sa = -sa;
        sb = -sb;
    } else if (det != 1) {
        throw Error(ErrorKind::Precondition, "marking partner is not a Farey neighbour");
    }
    m.basis_[0][0] = ua;
    m.basis_[1][0] = ub;
    m.basis_[0][1] = sa;
    m.basis_[1][1] = sb;
    return m;
}

Slope Marking::to_local(const Slope& global) const {
    const std::int64_t va = global.homology_a(), vb = global.homology_b();
    const std::int64_t ua = basis_[0][0], ub = basis_[1][0];
    const std::int64_t sa = basis_[0][1], sb = basis_[1][1];
    // v = alpha u + beta s with det(u, s) = 1.
    std::int64_t alpha = va * sb - vb * sa;
    std::int64_t beta = ua * vb - ub * va;
    return reduce_slope(beta, alpha);
}

Slope Marking::to_global(const Slope& local) const {
    const std::int64_t alpha = local.homology_a(), beta = local.homology_b();
    std::int64_t va = alpha * basis_[0][0] + beta * basis_[0][1];
    std::int64_t vb = alpha * basis_[1][0] + beta * basis_[1][1];
    return reduce_slope(vb, va);
}

}  // namespace pleat
