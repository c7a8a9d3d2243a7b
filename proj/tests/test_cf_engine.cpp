#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "abcroots/cf_engine.hpp"
#include "support/cf_oracle.hpp"

using namespace abcroots;

namespace {

// random non-perfect-power root, 2 <= s <= s_max, 2 <= k <= k_max
RootTarget random_root(std::mt19937_64& rng, unsigned long k_max, unsigned long s_max) {
    for (;;) {
        RootTarget r{Bigint(2 + rng() % (k_max - 1)), 2 + rng() % (s_max - 1)};
        const Bigint fl = nth_root_floor(r.k, r.s);
        if (ipow(fl, r.s) != r.k)
            return r;
    }
}

}  // namespace

TEST_CASE("fifth root of 109 expands to the published prefix") {
    const auto cs = expand({109, 5}, 5);
    std::vector<long> bs;
    for (const auto& c : cs)
        bs.push_back(c.b.get_si());
    CHECK(bs == std::vector<long>{2, 1, 1, 4, 77733});
    CHECK(cs[3].p == 23);
    CHECK(cs[3].q == 9);
    CHECK(cs[3].q_prev == 2);
}

TEST_CASE("sqrt(2) expansion") {
    const auto cs = expand({2, 2}, 4);
    std::vector<long> bs, ps, qs;
    for (const auto& c : cs) {
        bs.push_back(c.b.get_si());
        ps.push_back(c.p.get_si());
        qs.push_back(c.q.get_si());
    }
    CHECK(bs == std::vector<long>{1, 2, 2, 2});
    CHECK(ps == std::vector<long>{1, 3, 7, 17});
    CHECK(qs == std::vector<long>{1, 2, 5, 12});
}

TEST_CASE("cbrt(2) expansion matches the classical coefficients") {
    // first 40 terms, frozen from the high-precision oracle
    const std::vector<long> want{1, 3, 1, 5, 1, 1, 4, 1, 1, 8,  1, 14, 1, 10, 2, 1, 4, 12, 2, 3,
                                 2, 1, 3, 4, 1, 1, 2, 14, 3, 12, 1, 15, 3, 1,  4, 534, 1, 1, 5, 1};
    const auto cs = expand({2, 3}, 40);
    for (size_t i = 0; i < want.size(); ++i)
        CHECK(cs[i].b == want[i]);
    CHECK(cs[3].p == 29);
    CHECK(cs[3].q == 23);
    CHECK(cs[4].p == 34);
    CHECK(cs[4].q == 27);

    const auto oracle = testsupport::oracle_cf(2, 3, 40);
    for (size_t i = 0; i < oracle.size(); ++i)
        CHECK(cs[i].b == oracle[i]);
}

TEST_CASE("perfect powers are rejected") {
    CHECK_THROWS_AS(expand({8, 3}, 3), perfect_power_error);
    CHECK_THROWS_AS(expand({4, 2}, 3), perfect_power_error);
    CHECK_THROWS_AS(expand({243, 5}, 3), perfect_power_error);
    CHECK_THROWS_AS(expand({1, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(expand({5, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(expand({5, 2}, 0), std::invalid_argument);
    CHECK_NOTHROW(expand({64, 4}, 3));  // 64^(1/4) = 2^(3/2) is irrational
}

TEST_CASE("d_value on known convergents") {
    const auto r2 = expand({2, 2}, 2);
    CHECK(d_value({2, 2}, r2[0]) == 1);
    CHECK(d_value({2, 2}, r2[1]) == -1);

    const auto r109 = expand({109, 5}, 4);
    CHECK(d_value({109, 5}, r109[3]) == -2);

    const auto r23 = expand({2, 3}, 3);
    CHECK(d_value({2, 3}, r23[2]) == 3);  // 2*64 - 125
}

TEST_CASE("bvdp_predict reproduces known next coefficients") {
    const RootTarget cbrt2{2, 3};
    const auto cs = expand(cbrt2, 4);

    const auto p2 = bvdp_predict(cbrt2, cs[2], d_value(cbrt2, cs[2]));
    REQUIRE(p2.has_value());
    CHECK(*p2 == 5);  // floor(75/12 - 3/4) = floor(5.5)

    const auto p1 = bvdp_predict(cbrt2, cs[1], d_value(cbrt2, cs[1]));
    REQUIRE(p1.has_value());
    CHECK(*p1 == 1);  // floor(48/30 - 1/3)

    const RootTarget r109{109, 5};
    const auto cs109 = expand(r109, 4);
    const auto p3 = bvdp_predict(r109, cs109[3], d_value(r109, cs109[3]));
    REQUIRE(p3.has_value());
    CHECK(*p3 == 77733);

    CHECK_THROWS_AS(bvdp_predict(r109, cs109[0], d_value(r109, cs109[0])),
                    std::invalid_argument);
}

TEST_CASE("bvdp_predict agreement for cbrt(2) over n in [2, 60]") {
    const RootTarget root{2, 3};
    const auto cs = expand(root, 62);
    int exact = 0, total = 0;
    Bigint max_dev = 0;
    for (int n = 2; n <= 60; ++n) {
        const auto pred = bvdp_predict(root, cs[static_cast<size_t>(n)],
                                       d_value(root, cs[static_cast<size_t>(n)]));
        REQUIRE(pred.has_value());
        const Bigint dev = abs(*pred - cs[static_cast<size_t>(n) + 1].b);
        max_dev = std::max(max_dev, dev);
        ++total;
        if (dev == 0)
            ++exact;
    }
    CHECK(total == 59);
    CHECK(exact == 59);  // the degree-3 error term never bites here
    CHECK(max_dev <= 1);
}

TEST_CASE("expansion invariants across a randomized grid") {
    std::mt19937_64 rng(314159);
    for (int trial = 0; trial < 12; ++trial) {
        const auto root = random_root(rng, 500, 6);
        CAPTURE(root.k.get_str(), root.s);
        const auto cs = expand(root, 60);
        Bigint bound = 0;
        if (root.s == 2)
            bound = 2 * nth_root_floor(root.k, 2) + 1;
        for (const auto& c : cs) {
            // determinant identity p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1}
            const Bigint det = c.p * c.q_prev - c.p_prev * c.q;
            CHECK(det == (c.n % 2 == 0 ? -1 : 1));
            CHECK(gcd(c.p, c.q) == 1);
            if (c.n >= 1) {
                CHECK(c.b >= 1);
                // q_1 = b_1 can tie q_0 = 1; strict growth starts at n = 2
                CHECK(c.q >= c.q_prev);
            }
            if (c.n >= 2)
                CHECK(c.q > c.q_prev);
            // sign law: d_n > 0 iff n even iff p/q below the root
            const Bigint d = d_value(root, c);
            CHECK((d > 0) == (c.n % 2 == 0));
            const auto ord = cmp_root(root.k, root.s, c.p, c.q);
            CHECK((ord == Ordering::Greater) == (c.n % 2 == 0));
            if (root.s == 2)
                CHECK(abs(d) <= bound);
        }
    }
}

TEST_CASE("expansion agrees with the independent high-precision oracle") {
    std::mt19937_64 rng(2718281);
    for (int trial = 0; trial < 8; ++trial) {
        const auto root = random_root(rng, 400, 5);
        CAPTURE(root.k.get_str(), root.s);
        const auto cs = expand(root, 40);
        const auto oracle = testsupport::oracle_cf(root.k, root.s, 40);
        REQUIRE(oracle.size() == cs.size());
        for (size_t i = 0; i < cs.size(); ++i)
            CHECK(cs[i].b == oracle[i]);
    }
}

TEST_CASE("sqrt(2) parity law: q_n is even for odd n") {
    const auto cs = expand({2, 2}, 80);
    for (const auto& c : cs)
        if (c.n % 2 == 1)
            CHECK(mpz_even_p(c.q.get_mpz_t()));
}

TEST_CASE("deep roots keep exact arithmetic honest") {
    // 56th root of 245983, the hardest root in the bundled record table
    const auto cs = expand({245983, 56}, 12);
    std::vector<long> bs;
    for (const auto& c : cs)
        bs.push_back(c.b.get_si());
    CHECK(bs == std::vector<long>{1, 4, 33, 1, 1, 185, 2, 1, 2, 7, 2, 1});
}
