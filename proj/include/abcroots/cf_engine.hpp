#pragma once

// Regular continued fraction expansion of k^(1/s), done entirely in exact
// integer arithmetic. The tail after n steps is carried as an integer
// homography (A*x + B)/(C*x + D) of the fixed root x; every floor reduces
// to a handful of cmp_root power comparisons, so no polynomial root
// isolation or floating point enters the loop.

#include <optional>
#include <stdexcept>
#include <vector>

#include "exact_arith.hpp"

namespace abcroots {

struct perfect_power_error : std::domain_error {
    using std::domain_error::domain_error;
};

// The pair (k, s) naming the algebraic number k^(1/s), minimal polynomial
// x^s - k. k must not be a perfect s-th power or the expansion would be
// finite.
struct RootTarget {
    Bigint k;
    unsigned long s = 2;
};

inline void validate(const RootTarget& root) {
    if (root.s < 2)
        throw std::invalid_argument("root: s must be >= 2");
    if (root.k < 2)
        throw std::invalid_argument("root: k must be >= 2");
    const Bigint r = nth_root_floor(root.k, root.s);
    if (ipow(r, root.s) == root.k)
        throw perfect_power_error("root: " + dec(root.k) + " is a perfect " +
                                  std::to_string(root.s) + "th power; the expansion would be finite");
}

// Convergent p_n/q_n with its coefficient and the previous pair. Seeds are
// p_{-1}=1, q_{-1}=0, so n=0 carries (p_prev, q_prev) = (1, 0).
struct Convergent {
    int n = 0;
    Bigint b;  // coefficient b_n
    Bigint p, q;
    Bigint p_prev, q_prev;
};

// Single-owner expansion state for one root. Distinct roots can be expanded
// in parallel; nothing is shared.
class Expander {
public:
    explicit Expander(RootTarget root) : root_(std::move(root)) {
        validate(root_);
    }

    const RootTarget& root() const { return root_; }

    // Produce the next convergent (n = 0, 1, 2, ...).
    Convergent next() {
        const Bigint b = floor_of_tail();

        Convergent c;
        c.n = ++n_;
        c.b = b;
        if (c.n == 0) {
            c.p = b;
            c.q = 1;
            c.p_prev = 1;
            c.q_prev = 0;
        } else {
            c.p = b * p_ + p_prev_;
            c.q = b * q_ + q_prev_;
            c.p_prev = p_;
            c.q_prev = q_;
        }
        p_prev_ = c.p_prev;
        q_prev_ = c.q_prev;
        p_ = c.p;
        q_ = c.q;

        // tail step: x' = 1/(x - b), as a homography update
        Bigint na = hc_, nb = hd_;
        Bigint nc = ha_ - b * hc_, nd = hb_ - b * hd_;
        ha_ = na; hb_ = nb; hc_ = nc; hd_ = nd;
        renormalize();
        return c;
    }

private:
    // Is the current tail >= m? The tail is (A*x+B)/(C*x+D) with both sides
    // positive at the root, so this is the sign of (A-mC)*x - (mD-B).
    bool tail_at_least(const Bigint& m) const {
        const Bigint P = ha_ - m * hc_;
        const Bigint Q = m * hd_ - hb_;
        if (P == 0)
            return Q <= 0;
        if (P > 0)
            return cmp_root(root_.k, root_.s, Q, P) != Ordering::Less;
        return cmp_root(root_.k, root_.s, -Q, -P) != Ordering::Greater;
    }

    // floor of the tail; tails are > 1 after step 0 and the root itself is
    // > 1, so the search starts at 1. Exponential bracket, then bisection.
    Bigint floor_of_tail() const {
        Bigint lo = 1, hi = 2;
        while (tail_at_least(hi)) {
            lo = hi;
            hi *= 2;
        }
        while (hi - lo > 1) {
            Bigint mid = (lo + hi) / 2;
            if (tail_at_least(mid))
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    void renormalize() {
        Bigint g = gcd(gcd(ha_, hb_), gcd(hc_, hd_));
        if (g > 1) {
            ha_ /= g; hb_ /= g;
            hc_ /= g; hd_ /= g;
        }
    }

    RootTarget root_;
    Bigint ha_ = 1, hb_ = 0, hc_ = 0, hd_ = 1;
    Bigint p_ = 0, q_ = 0, p_prev_ = 0, q_prev_ = 0;
    int n_ = -1;
};

inline std::vector<Convergent> expand(const RootTarget& root, int terms) {
    if (terms < 1)
        throw std::invalid_argument("expand: terms must be >= 1");
    Expander ex(root);
    std::vector<Convergent> out;
    out.reserve(static_cast<size_t>(terms));
    for (int i = 0; i < terms; ++i)
        out.push_back(ex.next());
    return out;
}

// d_n = k*q_n^s - p_n^s, the defect of the convergent. Never zero for a
// valid root.
inline Bigint d_value(const RootTarget& root, const Convergent& c) {
    Bigint d = root.k * ipow(c.q, root.s) - ipow(c.p, root.s);
    if (d == 0)
        throw perfect_power_error("d_value: zero defect, root is a perfect power");
    return d;
}

// Bombieri / van der Poorten next-coefficient prediction,
//   floor( s*p^(s-1) / (q*|d|) - q_prev/q ),
// evaluated as one exact floor division. The sign factor of the quoted
// degree-3 formula is absorbed by |d| via the sign law of d_n. Needs n >= 1.
// A non-positive floor means the error term dominated; the caller should
// fall back to exact expansion.
inline std::optional<Bigint> bvdp_predict(const RootTarget& root, const Convergent& c,
                                          const Bigint& d) {
    if (c.n < 1)
        throw std::invalid_argument("bvdp_predict: needs n >= 1");
    const Bigint ad = abs(d);
    const Bigint num = root.s * ipow(c.p, root.s - 1) - c.q_prev * ad;
    const Bigint den = c.q * ad;
    Bigint pred;
    mpz_fdiv_q(pred.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (pred <= 0)
        return std::nullopt;
    return pred;
}

}  // namespace abcroots
