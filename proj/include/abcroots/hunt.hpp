#pragma once

// Grid hunt: scan every valid root in a (k, s) rectangle, build the
// resulting equations to the configured depth and keep the ones whose
// chosen quality clears the threshold. Roots are fanned out across workers;
// results are merged in grid order so output is deterministic for any
// worker count.

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "abc_model.hpp"
#include "analysis.hpp"
#include "store.hpp"

namespace abcroots {

enum class QualityKind { Q1, Q2 };

struct HuntConfig {
    Bigint k_min = 2, k_max = 2;
    unsigned long s_min = 2, s_max = 2;
    int depth = 10;
    QualityKind kind = QualityKind::Q2;
    double min_quality = 1.0;
    FactorEffort effort;
    unsigned workers = 1;

    void validate_ranges() const {
        if (k_min > k_max || s_min > s_max)
            throw std::invalid_argument("hunt: empty k or s range");
        if (s_min < 2)
            throw std::invalid_argument("hunt: s must be >= 2");
        if (depth < 1)
            throw std::invalid_argument("hunt: depth must be >= 1");
        if (min_quality < 0)
            throw std::invalid_argument("hunt: threshold must be >= 0");
    }
};

struct HuntOutcome {
    std::vector<HitRecord> hits;  // grid order: (k, s, n)
    size_t roots_scanned = 0;
    size_t roots_skipped = 0;  // perfect powers in the grid
    size_t equations = 0;
};

namespace detail {

// The q2 threshold test: the spec's hit boundary at 1 must be decided on
// integers, so exactly at min = 1 the exact inequality is authoritative.
inline bool q2_exceeds(const ResultingEquation& e, double q2, double min) {
    if (min == 1.0)
        return is_hit_q2(e);
    return q2 > min;
}

// q1 selection keeps partially factored rows honest: a bracket that
// straddles the threshold is recorded (hit state Unknown), never dropped.
inline bool q1_selects(const Quality1& q1, double min) {
    if (q1.status == Quality1Status::Exact)
        return q1.value() > min;
    return q1.hi > min;
}

}  // namespace detail

inline HuntOutcome run_hunt(const HuntConfig& cfg, bool fixed_clock) {
    cfg.validate_ranges();

    std::vector<RootTarget> grid;
    for (Bigint k = cfg.k_min; k <= cfg.k_max; ++k) {
        if (k < 2)
            continue;
        for (unsigned long s = cfg.s_min; s <= cfg.s_max; ++s)
            grid.push_back({k, s});
    }

    const std::string stamp = iso_timestamp(fixed_clock);
    std::vector<std::vector<HitRecord>> per_root(grid.size());
    std::vector<char> skipped(grid.size(), 0);
    std::atomic<size_t> equations{0};
    std::atomic<size_t> next{0};

    auto work = [&]() {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            const auto& root = grid[i];
            try {
                validate(root);
            } catch (const perfect_power_error&) {
                skipped[i] = 1;
                continue;
            }
            const auto cs = expand(root, cfg.depth);
            for (const auto& cv : cs) {
                const auto e = resulting_equation(root, cv);
                equations.fetch_add(1, std::memory_order_relaxed);

                HitRecord h;
                h.q2 = quality2(e);
                h.hit_q2 = is_hit_q2(e);
                bool selected = false;
                if (cfg.kind == QualityKind::Q2) {
                    selected = detail::q2_exceeds(e, h.q2, cfg.min_quality);
                    if (selected)
                        h.q1 = quality1(e, cfg.effort);
                } else {
                    h.q1 = quality1(e, cfg.effort);
                    selected = detail::q1_selects(h.q1, cfg.min_quality);
                }
                if (!selected)
                    continue;
                h.k = root.k;
                h.s = root.s;
                h.n = cv.n;
                if (cv.n + 1 < cfg.depth)
                    h.b_next = cs[static_cast<size_t>(cv.n) + 1].b;
                h.d = e.d;
                h.a = e.a;
                h.b = e.b;
                h.c = e.c;
                h.kind = cfg.kind == QualityKind::Q1 ? "q1" : "q2";
                h.timestamp = stamp;
                per_root[i].push_back(std::move(h));
            }
        }
    };

    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1 || grid.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<size_t>(workers, grid.size()); ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    HuntOutcome out;
    out.equations = equations.load();
    for (size_t i = 0; i < grid.size(); ++i) {
        if (skipped[i]) {
            ++out.roots_skipped;
            continue;
        }
        ++out.roots_scanned;
        for (auto& h : per_root[i])
            out.hits.push_back(std::move(h));
    }
    return out;
}

}  // namespace abcroots
