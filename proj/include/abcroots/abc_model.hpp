#pragma once

// Resulting equations attached to convergents, the three quality metrics,
// hit predicates and the WNEABC constant probe. Every hit verdict is made
// on exact integer inequalities; the floating quality values are reports.

#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cf_engine.hpp"
#include "exact_arith.hpp"

namespace abcroots {

// The a + b = c identity carried by a convergent:
//   d > 0:  d + p^s = k*q^s     (a = d,  b = p^s,    c = k*q^s)
//   d < 0:  -d + k*q^s = p^s    (a = -d, b = k*q^s,  c = p^s)
// base_product |d|*p*q*k is the exponent-free product the 2nd quality and
// the WNEABC probe run against. Structural powers: s on p and q, 1 on d
// and k.
struct ResultingEquation {
    RootTarget root;
    int n = 0;
    Bigint d;
    Bigint a, b, c;
    Bigint p, q;
    Bigint base_product;
};

inline ResultingEquation resulting_equation(const RootTarget& root, const Convergent& cv) {
    ResultingEquation e;
    e.root = root;
    e.n = cv.n;
    e.p = cv.p;
    e.q = cv.q;
    e.d = d_value(root, cv);
    const Bigint ps = ipow(cv.p, root.s);
    const Bigint kqs = root.k * ipow(cv.q, root.s);
    if (e.d > 0) {
        e.a = e.d;
        e.b = ps;
        e.c = kqs;
    } else {
        e.a = -e.d;
        e.b = kqs;
        e.c = ps;
    }
    if (e.a + e.b != e.c)
        throw std::logic_error("resulting_equation: triple does not balance");
    e.base_product = abs(e.d) * cv.p * cv.q * root.k;
    return e;
}

// Divide out the common gcd of the triple. is_real_abc means nothing had to
// be divided out, i.e. the equation was already a genuine ABC triple.
struct ReducedTriple {
    Bigint a, b, c;
    bool is_real_abc = true;
};

inline ReducedTriple coprime_reduce(const Bigint& a, const Bigint& b, const Bigint& c) {
    const Bigint g = gcd(gcd(a, b), c);
    return {a / g, b / g, c / g, g == 1};
}

inline ReducedTriple coprime_reduce(const ResultingEquation& e) {
    return coprime_reduce(e.a, e.b, e.c);
}

enum class Quality1Status { Exact, LowerBoundCertified, Unavailable };
enum class TriState { Yes, No, Unknown };

// quality1 = ln(c)/ln(rad(abc)). With a partial factorization only the
// bracket [ln(c)/ln(rad_upper), ln(c)/ln(rad_lower)] is known; the hit
// verdict is still decided exactly on c vs the radical bounds.
struct Quality1 {
    double lo = 0, hi = 0;  // lo == hi when status == Exact
    Quality1Status status = Quality1Status::Unavailable;
    TriState hit = TriState::Unknown;
    Bigint rad_lower, rad_upper;

    double value() const { return lo; }
};

namespace detail {

inline Quality1 quality1_from_radical(const Bigint& c, const Bigint& rad_lower,
                                      const Bigint& rad_upper, bool complete) {
    Quality1 r;
    r.rad_lower = rad_lower;
    r.rad_upper = rad_upper;
    if (rad_lower < 2 && rad_upper < 2)
        throw std::domain_error("quality1: radical of abc is 1");
    const double lc = log_of(c);
    if (complete) {
        r.status = Quality1Status::Exact;
        r.lo = r.hi = lc / log_of(rad_lower);
        r.hit = c > rad_lower ? TriState::Yes : TriState::No;
        return r;
    }
    r.lo = lc / log_of(rad_upper);
    r.hi = rad_lower >= 2 ? lc / log_of(rad_lower) : std::numeric_limits<double>::infinity();
    if (c > rad_upper) {
        r.status = Quality1Status::LowerBoundCertified;
        r.hit = TriState::Yes;
    } else if (c <= rad_lower) {
        r.status = Quality1Status::Unavailable;
        r.hit = TriState::No;
    } else {
        r.status = Quality1Status::Unavailable;
        r.hit = TriState::Unknown;
    }
    return r;
}

}  // namespace detail

// rad(abc) of the resulting equation equals rad(|d|*k*p*q): the s-th powers
// contribute no new primes. Factoring the four small components separately
// beats factoring the assembled product by a wide margin.
inline Quality1 quality1(const ResultingEquation& e, const FactorEffort& effort = {}) {
    Factorization f = factorize(abs(e.d), effort);
    f = merge(std::move(f), factorize(e.root.k, effort));
    f = merge(std::move(f), factorize(e.p, effort));
    f = merge(std::move(f), factorize(e.q, effort));
    const auto [lower, upper] = radical(f);
    return detail::quality1_from_radical(e.c, lower, upper, f.complete());
}

// quality1 of an arbitrary balanced triple (the verify path).
inline Quality1 quality1_triple(const Bigint& a, const Bigint& b, const Bigint& c,
                                const FactorEffort& effort = {}) {
    if (a * b * c < 2)
        throw std::domain_error("quality1: abc must be >= 2");
    Factorization f = factorize(a, effort);
    f = merge(std::move(f), factorize(b, effort));
    f = merge(std::move(f), factorize(c, effort));
    const auto [lower, upper] = radical(f);
    return detail::quality1_from_radical(c, lower, upper, f.complete());
}

// quality2 = ln(c)/ln(|d|*p*q*k), branch-free form of the paper's two cases.
inline double quality2(const ResultingEquation& e) {
    if (e.base_product < 2)
        throw std::domain_error("quality2: base product below 2 leaves the quality undefined");
    return log_of(e.c) / log_of(e.base_product);
}

// quality2 > 1 as an exact integer inequality.
inline bool is_hit_q2(const ResultingEquation& e) {
    return e.c > e.base_product;
}

// The sqrt(2)-specific 3rd quality ln(p^2)/ln(p*q), defined only on the
// d < 0 (odd-n) equations where q_n is even.
inline double quality3_sqrt2(const ResultingEquation& e) {
    if (e.root.k != 2 || e.root.s != 2 || e.d >= 0)
        throw std::domain_error("quality3: defined only for sqrt(2) equations with d < 0");
    return log_of(e.p * e.p) / log_of(e.p * e.q);
}

// Degree-3 hit criterion for cbrt(2): a next coefficient above 6 forces a
// 2nd-quality hit at the current index.
inline bool cube2_hit_criterion(const Bigint& b_next) {
    return b_next > 6;
}

// Smallest constant that makes c < K * (|d|*p*q*k)^(1+eps) hold at this
// equation; any constant strictly above it witnesses WNEABC here.
struct WneabcProbe {
    double epsilon = 0;
    double k_needed = 0;
};

inline WneabcProbe wneabc_k_needed(const ResultingEquation& e, double epsilon) {
    if (e.base_product < 2)
        throw std::domain_error("wneabc: base product below 2");
    WneabcProbe pr;
    pr.epsilon = epsilon;
    pr.k_needed = std::exp(log_of(e.c) - (1.0 + epsilon) * log_of(e.base_product));
    return pr;
}

// Exact value of the eps = 0 probe, c / base_product as a canonical rational.
inline mpq_class wneabc_k_needed_exact_eps0(const ResultingEquation& e) {
    mpq_class r(e.c, e.base_product);
    r.canonicalize();
    return r;
}

}  // namespace abcroots
