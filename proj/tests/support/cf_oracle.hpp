#pragma once

// Independent continued-fraction oracle for tests only: expand k^(1/s) by
// high-precision floating floor/invert (MPFR), with two safety nets the
// exact engine does not share. Every fractional part must stay a margin
// away from 0 and 1, and the whole run must reproduce identically at twice
// the precision, otherwise the precision is raised and the run repeated.

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <vector>

namespace testsupport {

inline bool oracle_cf_try(const mpz_class& k, unsigned long s, int terms, mpfr_prec_t prec,
                          std::vector<mpz_class>& out) {
    out.clear();
    mpfr_t x, f, margin;
    mpfr_init2(x, prec);
    mpfr_init2(f, prec);
    mpfr_init2(margin, prec);
    mpfr_set_z(x, k.get_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(x, x, s, MPFR_RNDN);
    mpfr_set_ui_2exp(margin, 1, -static_cast<long>(prec / 2), MPFR_RNDN);

    bool ok = true;
    for (int i = 0; i < terms; ++i) {
        mpfr_floor(f, x);
        mpz_class b;
        mpfr_get_z(b.get_mpz_t(), f, MPFR_RNDN);
        mpfr_sub(x, x, f, MPFR_RNDN);
        if (mpfr_cmp(x, margin) <= 0) {
            ok = false;
            break;
        }
        mpfr_ui_sub(f, 1, x, MPFR_RNDN);
        if (mpfr_cmp(f, margin) <= 0) {
            ok = false;
            break;
        }
        out.push_back(b);
        mpfr_ui_div(x, 1, x, MPFR_RNDN);
    }
    mpfr_clear(x);
    mpfr_clear(f);
    mpfr_clear(margin);
    return ok;
}

inline std::vector<mpz_class> oracle_cf(const mpz_class& k, unsigned long s, int terms) {
    for (mpfr_prec_t prec = 4096; prec <= (1 << 22); prec *= 2) {
        std::vector<mpz_class> a, b;
        if (oracle_cf_try(k, s, terms, prec, a) && oracle_cf_try(k, s, terms, prec * 2, b) &&
            a == b)
            return a;
    }
    throw std::runtime_error("oracle_cf: precision ceiling reached");
}

// ln via MPFR at 256 bits, for checking the double-precision log helper.
inline double oracle_log(const mpz_class& n) {
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    const double r = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return r;
}

}  // namespace testsupport
