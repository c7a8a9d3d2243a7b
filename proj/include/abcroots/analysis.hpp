#pragma once

// Series-level studies over one root: per-index quality rows with summary,
// the quadratic-convergence report, and the Roth-lemma series
// q_n^eps/(b_{n+1}+2). Empirical throughout; nothing here extrapolates
// beyond the scanned depth.

#include <algorithm>
#include <optional>
#include <vector>

#include "abc_model.hpp"
#include "cf_engine.hpp"

namespace abcroots {

struct SeriesRow {
    int n = 0;
    std::optional<Bigint> b_next;  // b_{n+1}, absent on the last row
    size_t d_digits = 0;           // decimal digits of |d_n|
    Quality1 q1;
    double q2 = 0;
    bool hit_q2 = false;
    std::optional<double> q3;  // sqrt(2), d < 0 rows only
    std::vector<WneabcProbe> probes;
};

struct KNeededSup {
    double epsilon = 0;
    double sup = 0;
    int argmax = 0;
};

struct SeriesSummary {
    double max_q2 = 0;
    int argmax_q2 = 0;
    double q2_final = 0;
    Bigint max_coefficient;  // over b_0 .. b_{depth-1}
    std::vector<KNeededSup> sup_k_needed;
};

struct SeriesReport {
    RootTarget root;
    int depth = 0;
    std::vector<SeriesRow> rows;
    SeriesSummary summary;
};

// Expand to depth, build every resulting equation, evaluate all applicable
// qualities and probes. Deterministic for fixed inputs and effort.
inline SeriesReport quality_series(const RootTarget& root, int depth,
                                   const std::vector<double>& epsilons,
                                   const FactorEffort& effort = {}) {
    if (depth < 1)
        throw std::invalid_argument("quality_series: depth must be >= 1");
    SeriesReport rep;
    rep.root = root;
    rep.depth = depth;
    const auto cs = expand(root, depth);

    rep.summary.max_coefficient = cs[0].b;
    for (const auto& cv : cs)
        rep.summary.max_coefficient = std::max(rep.summary.max_coefficient, cv.b);

    rep.summary.sup_k_needed.reserve(epsilons.size());
    for (double eps : epsilons)
        rep.summary.sup_k_needed.push_back({eps, 0.0, 0});

    for (const auto& cv : cs) {
        const auto e = resulting_equation(root, cv);
        SeriesRow row;
        row.n = cv.n;
        if (cv.n + 1 < depth)
            row.b_next = cs[static_cast<size_t>(cv.n) + 1].b;
        row.d_digits = dec(abs(e.d)).size();
        row.q1 = quality1(e, effort);
        row.q2 = quality2(e);
        row.hit_q2 = is_hit_q2(e);
        if (root.k == 2 && root.s == 2 && e.d < 0)
            row.q3 = quality3_sqrt2(e);
        for (size_t i = 0; i < epsilons.size(); ++i) {
            const auto probe = wneabc_k_needed(e, epsilons[i]);
            row.probes.push_back(probe);
            auto& sup = rep.summary.sup_k_needed[i];
            if (probe.k_needed > sup.sup || cv.n == 0) {
                sup.sup = probe.k_needed;
                sup.argmax = cv.n;
            }
        }
        if (row.q2 > rep.summary.max_q2 || cv.n == 0) {
            rep.summary.max_q2 = row.q2;
            rep.summary.argmax_q2 = cv.n;
        }
        if (cv.n == depth - 1)
            rep.summary.q2_final = row.q2;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// Convergence summary used by the quadratic-case study: final q2, the worst
// |q2 - 1| over the last quarter of indices, exact max |d_n|, and (for
// sqrt(2)) strict-decrease violations of the odd-n 3rd-quality subsequence.
// d_not_unit counts the indices where |d_n| != 1; nonzero for most
// quadratic k, so only the bounded-|d_n| law is ever asserted.
struct ConvergenceReport {
    RootTarget root;
    int depth = 0;
    double q2_final = 0;
    double max_abs_q2_dev_final_quarter = 0;
    Bigint max_abs_d;
    int d_not_unit = 0;
    std::optional<int> q3_monotonicity_violations;  // sqrt(2) only
};

inline ConvergenceReport q2_convergence_report(const RootTarget& root, int depth) {
    if (depth < 10)
        throw std::invalid_argument("q2_convergence_report: depth must be >= 10");
    ConvergenceReport rep;
    rep.root = root;
    rep.depth = depth;
    rep.max_abs_d = 0;

    const bool track_q3 = (root.k == 2 && root.s == 2);
    if (track_q3)
        rep.q3_monotonicity_violations = 0;

    const auto cs = expand(root, depth);
    double prev_q3 = 0;
    bool have_q3 = false;
    for (const auto& cv : cs) {
        const auto e = resulting_equation(root, cv);
        rep.max_abs_d = std::max(rep.max_abs_d, Bigint(abs(e.d)));
        if (abs(e.d) != 1)
            ++rep.d_not_unit;
        const double q2 = quality2(e);
        if (cv.n >= depth - depth / 4)
            rep.max_abs_q2_dev_final_quarter =
                std::max(rep.max_abs_q2_dev_final_quarter, std::abs(q2 - 1.0));
        if (cv.n == depth - 1)
            rep.q2_final = q2;
        if (track_q3 && e.d < 0) {
            const double q3 = quality3_sqrt2(e);
            if (have_q3 && !(q3 < prev_q3))
                ++*rep.q3_monotonicity_violations;
            prev_q3 = q3;
            have_q3 = true;
        }
    }
    return rep;
}

// The lemma's series q_n^eps/(b_{n+1}+2), with the running minimum. Roth is
// non-effective, so no positivity floor is asserted; the minimum is just
// reported.
struct LemmaPoint {
    int n = 0;
    double value = 0;
};

struct LemmaSeries {
    RootTarget root;
    double epsilon = 0;
    std::vector<LemmaPoint> points;
    double running_min = 0;
    int argmin = 0;
};

// How well the next-coefficient prediction tracks the exact expansion over
// [from_n, to_n]. For degree 3 the deviation is expected to stay within 1;
// for higher degree there is no threshold, so mismatch indices are recorded
// rather than bounded.
struct PredictorReport {
    int total = 0;
    int exact = 0;
    std::vector<int> mismatch_indices;
    Bigint max_deviation;
    std::vector<int> out_of_range_indices;  // prediction floored to <= 0
};

inline PredictorReport predictor_agreement(const RootTarget& root, int from_n, int to_n) {
    if (from_n < 1 || to_n < from_n)
        throw std::invalid_argument("predictor_agreement: need 1 <= from_n <= to_n");
    PredictorReport rep;
    rep.max_deviation = 0;
    const auto cs = expand(root, to_n + 2);
    for (int n = from_n; n <= to_n; ++n) {
        const auto& cv = cs[static_cast<size_t>(n)];
        const auto pred = bvdp_predict(root, cv, d_value(root, cv));
        if (!pred) {
            rep.out_of_range_indices.push_back(n);
            continue;
        }
        ++rep.total;
        const Bigint dev = abs(*pred - cs[static_cast<size_t>(n) + 1].b);
        if (dev == 0) {
            ++rep.exact;
        } else {
            rep.mismatch_indices.push_back(n);
            rep.max_deviation = std::max(rep.max_deviation, dev);
        }
    }
    return rep;
}

inline LemmaSeries lemma_series(const RootTarget& root, int depth, double epsilon) {
    if (depth < 2)
        throw std::invalid_argument("lemma_series: depth must be >= 2");
    if (epsilon <= 0)
        throw std::invalid_argument("lemma_series: epsilon must be > 0");
    LemmaSeries out;
    out.root = root;
    out.epsilon = epsilon;

    // one extra term so every emitted row has its exact b_{n+1}
    const auto cs = expand(root, depth + 1);
    for (int n = 0; n < depth; ++n) {
        const double qe = std::exp(epsilon * log_of(cs[static_cast<size_t>(n)].q));
        const double denom = mpz_get_d(cs[static_cast<size_t>(n) + 1].b.get_mpz_t()) + 2.0;
        const double v = qe / denom;
        out.points.push_back({n, v});
        if (n == 0 || v < out.running_min) {
            out.running_min = v;
            out.argmin = n;
        }
    }
    return out;
}

}  // namespace abcroots
