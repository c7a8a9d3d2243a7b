#pragma once

// Arbitrary-precision integer primitives: exact powers, floor nth roots,
// the root-vs-rational comparison oracle, bounded-effort factorization and
// radical brackets. Everything here is exact; no floating point is used
// except for the log helper, which is display-grade only.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace abcroots {

using Bigint = mpz_class;

enum class Ordering { Less, Equal, Greater };

// base^exp, exact. 0^0 is rejected.
inline Bigint ipow(const Bigint& base, unsigned long exp) {
    if (base == 0 && exp == 0)
        throw std::invalid_argument("ipow: 0^0 is undefined");
    Bigint r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// Largest r with r^s <= a. Binary search on the exponentiation predicate;
// the initial bracket comes from the bit length of a.
inline Bigint nth_root_floor(const Bigint& a, unsigned long s) {
    if (a < 1)
        throw std::invalid_argument("nth_root_floor: a must be >= 1");
    if (s < 1)
        throw std::invalid_argument("nth_root_floor: s must be >= 1");
    if (s == 1 || a == 1)
        return s == 1 ? a : Bigint(1);

    const size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);  // 2^(bits-1) <= a < 2^bits
    Bigint lo, hi;
    mpz_ui_pow_ui(lo.get_mpz_t(), 2, static_cast<unsigned long>((bits - 1) / s));
    mpz_ui_pow_ui(hi.get_mpz_t(), 2, static_cast<unsigned long>((bits + s - 1) / s));
    hi += 1;  // keep the invariant hi^s > a strict

    // invariant: lo^s <= a < hi^s
    while (hi - lo > 1) {
        Bigint mid = (lo + hi) / 2;
        if (ipow(mid, s) <= a)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Exact comparison of the real root k^(1/s) against u/v, realized as the
// sign of k*v^s - u^s. The root is positive, so u <= 0 compares Greater.
inline Ordering cmp_root(const Bigint& k, unsigned long s, const Bigint& u, const Bigint& v) {
    if (v < 1)
        throw std::invalid_argument("cmp_root: v must be >= 1");
    if (u <= 0)
        return Ordering::Greater;
    const Bigint lhs = k * ipow(v, s);
    const Bigint rhs = ipow(u, s);
    if (lhs > rhs) return Ordering::Greater;
    if (lhs < rhs) return Ordering::Less;
    return Ordering::Equal;
}

// Effort budget for factorize(). Trial division runs up to trial_bound;
// Pollard rho (Brent variant) gets rho_iterations squarings in total.
struct FactorEffort {
    unsigned long trial_bound = 1'000'000;
    unsigned long rho_iterations = 300'000;
    int mr_rounds = 32;  // strong pseudoprime rounds for factor certification
};

enum class FactorStatus { Complete, Partial };

// prime -> exponent map plus whatever resisted the budget as a cofactor.
// Invariant: product(factors) * cofactor == original input, and every key
// passed the primality test.
struct Factorization {
    std::map<Bigint, unsigned long> factors;
    Bigint cofactor = 1;
    FactorStatus status = FactorStatus::Complete;

    bool complete() const { return status == FactorStatus::Complete; }

    Bigint reassemble() const {
        Bigint n = cofactor;
        for (const auto& [p, e] : factors)
            n *= ipow(p, e);
        return n;
    }
};

inline bool is_probable_prime(const Bigint& n, int rounds = 32) {
    return mpz_probab_prime_p(n.get_mpz_t(), rounds) > 0;
}

namespace detail {

// Brent's cycle-finding variant of Pollard rho. Returns a proper factor of n
// (odd composite) or 0 when the iteration budget runs out. budget counts
// squarings and is decremented in place.
inline Bigint rho_brent(const Bigint& n, unsigned long c, unsigned long& budget) {
    const unsigned long batch = 128;
    Bigint y(2), x, ys, q(1), g(1);
    unsigned long r = 1;
    while (g == 1 && budget > 0) {
        x = y;
        for (unsigned long i = 0; i < r && budget > 0; ++i) {
            y = (y * y + c) % n;
            --budget;
        }
        unsigned long k = 0;
        while (k < r && g == 1 && budget > 0) {
            ys = y;
            const unsigned long steps = std::min(batch, r - k);
            for (unsigned long i = 0; i < steps && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        // batch gcd overshot; replay one step at a time
        do {
            ys = (ys * ys + c) % n;
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return 0;
    return g;
}

inline void add_factor(Factorization& f, const Bigint& p, unsigned long e) {
    f.factors[p] += e;
}

}  // namespace detail

// Trial division to effort.trial_bound, then Brent rho under the iteration
// cap. Budget exhaustion is not an error: the leftover composite lands in
// the cofactor and the status says Partial.
inline Factorization factorize(Bigint n, const FactorEffort& effort = {}) {
    if (n < 1)
        throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    if (n == 1)
        return f;

    while (mpz_even_p(n.get_mpz_t())) {
        n /= 2;
        ++f.factors[2];
    }

    for (unsigned long p = 3; p <= effort.trial_bound; p += 2) {
        if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            detail::add_factor(f, p, 1);
        }
    }
    if (n == 1)
        return f;
    if (n <= Bigint(effort.trial_bound) * effort.trial_bound || is_probable_prime(n, effort.mr_rounds)) {
        // below trial_bound^2 the survivor is prime by construction
        detail::add_factor(f, n, 1);
        return f;
    }

    // rho phase over a stack of composite survivors
    unsigned long budget = effort.rho_iterations;
    std::map<Bigint, unsigned long> pending;  // composite -> multiplicity
    pending[n] = 1;
    while (!pending.empty()) {
        auto it = pending.begin();
        Bigint m = it->first;
        unsigned long mult = it->second;
        pending.erase(it);

        if (m == 1)
            continue;
        if (is_probable_prime(m, effort.mr_rounds)) {
            detail::add_factor(f, m, mult);
            continue;
        }
        // peel perfect powers so rho never chews on p^e
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            const size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
            bool split = false;
            for (unsigned long e = 2; e <= bits; ++e) {
                Bigint r = nth_root_floor(m, e);
                if (ipow(r, e) == m) {
                    pending[r] += mult * e;
                    split = true;
                    break;
                }
            }
            if (split)
                continue;
        }
        Bigint g = 0;
        for (unsigned long c = 1; budget > 0 && g == 0 && c <= 64; ++c)
            g = detail::rho_brent(m, c, budget);
        if (g == 0) {
            f.cofactor *= ipow(m, mult);
            f.status = FactorStatus::Partial;
        } else {
            pending[g] += mult;
            pending[m / g] += mult;
        }
    }
    return f;
}

// rad(n) bracket. Complete input gives (rad, rad). A Partial cofactor hides
// at least one unknown prime, so the certified bracket is
// [product of known primes, that product * cofactor].
inline std::pair<Bigint, Bigint> radical(const Factorization& f) {
    Bigint lower = 1;
    for (const auto& [p, e] : f.factors) {
        (void)e;
        lower *= p;
    }
    return {lower, lower * f.cofactor};
}

// Factorization of a product n1*n2 from factorizations of the parts.
inline Factorization merge(Factorization a, const Factorization& b) {
    for (const auto& [p, e] : b.factors)
        a.factors[p] += e;
    a.cofactor *= b.cofactor;
    if (!b.complete())
        a.status = FactorStatus::Partial;
    return a;
}

// Natural log of a big positive integer via the (mantissa, exponent)
// decomposition; relative error is a few ulps, far below the 1e-12 the
// display values need. Decisions never rest on this.
inline double log_of(const Bigint& n) {
    if (n <= 0)
        throw std::invalid_argument("log_of: n must be positive");
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

inline std::string dec(const Bigint& n) { return n.get_str(); }

}  // namespace abcroots
