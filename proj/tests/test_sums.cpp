#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lerch/sums.hpp"

using namespace lerch;

namespace {

// term-by-term oracle: sum of 1/j over floor(kp/N) < j <= floor((k+1)p/N), j < p
u32 naive_s(u32 p, u32 n, u32 k) {
    u64 lo = static_cast<u64>(k) * p / n;
    u64 hi = static_cast<u64>(k + 1) * p / n;
    u64 acc = 0;
    for (u64 j = lo + 1; j <= hi && j < p; ++j) acc = (acc + mod_inv(static_cast<i64>(j), p)) % p;
    return static_cast<u32>(acc);
}

}  // namespace

TEST_CASE("sum_table matches the per-term oracle") {
    for (u32 p : {5u, 7u, 11u, 97u, 101u, 1009u}) {
        PrimeContext ctx(p);
        for (u32 n : {1u, 2u, 3u, 6u, 8u, 12u, 24u, 46u}) {
            if (n % p == 0) continue;
            auto t = sum_table(ctx, n);
            REQUIRE(t.values.size() == n);
            for (u32 k = 0; k < n; ++k) CHECK(t.values[k] == naive_s(p, n, k));
        }
    }
}

TEST_CASE("frozen tables at p = 7") {
    PrimeContext ctx(7);
    CHECK(sum_table(ctx, 3).values == std::vector<u32>{5, 0, 2});
    CHECK(sum_table(ctx, 8).values == std::vector<u32>{0, 1, 4, 5, 2, 3, 6, 0});
    CHECK(sum_table(ctx, 1).values == std::vector<u32>{0});
}

TEST_CASE("mirror and total-sum properties") {
    for (u32 p : {11u, 103u, 1093u}) {
        PrimeContext ctx(p);
        for (u32 n : {2u, 5u, 9u, 16u, 24u}) {
            auto t = sum_table(ctx, n);
            u64 total = 0;
            for (u32 k = 0; k < n; ++k) {
                total += t.values[k];
                CHECK((t.values[k] + t.values[n - 1 - k]) % p == 0);
            }
            CHECK(total % p == 0);  // Wolstenholme: the full harmonic sum vanishes
        }
    }
}

TEST_CASE("refinement: s(k,N) splits into the matching s(.,MN) buckets") {
    PrimeContext ctx(103);
    for (u32 n : {2u, 3u, 4u}) {
        for (u32 m : {2u, 3u}) {
            auto coarse = sum_table(ctx, n);
            auto fine = sum_table(ctx, n * m);
            for (u32 k = 0; k < n; ++k) {
                u64 acc = 0;
                for (u32 i = 0; i < m; ++i) acc += fine.values[k * m + i];
                CHECK(acc % ctx.p == coarse.values[k]);
            }
        }
    }
}

TEST_CASE("index normalization and errors") {
    PrimeContext ctx(11);
    SumCache c(ctx);
    CHECK(c.s(4, -1) == c.s(4, 3));
    CHECK(c.s(4, 7) == c.s(4, 3));
    CHECK_THROWS_AS(c.s(11, 0), BadModulusError);
    CHECK_THROWS_AS(c.s(22, 1), BadModulusError);
    CHECK_THROWS_AS(sum_table(ctx, 0), BadModulusError);
}

TEST_CASE("SumCache memoizes tables") {
    PrimeContext ctx(101);
    SumCache c(ctx);
    CHECK(c.tables_built() == 0);
    c.s(6, 0);
    c.s(6, 5);
    CHECK(c.tables_built() == 1);
    c.s(8, 2);
    CHECK(c.tables_built() == 2);
    c.table(6);
    CHECK(c.tables_built() == 2);
}

TEST_CASE("filtered families against per-term oracles") {
    for (u32 p : {13u, 101u, 997u}) {
        PrimeContext ctx(p);
        SumCache c(ctx);
        for (u32 n : {1u, 2u, 3u, 6u, 8u}) {
            for (u32 k = 0; k < n; ++k) {
                u64 lo = static_cast<u64>(k) * p / n, hi = static_cast<u64>(k + 1) * p / n;
                u64 odd = 0, even = 0, div3 = 0;
                for (u64 j = lo + 1; j <= hi && j < p; ++j) {
                    u64 inv = mod_inv(static_cast<i64>(j), p);
                    if (j % 2) odd = (odd + inv) % p;
                    else even = (even + inv) % p;
                    if (j % 3 == 0) div3 = (div3 + inv) % p;
                }
                CHECK(c.s_prime(n, k) == odd);
                CHECK(c.s_dprime(n, k) == even);
                CHECK(c.s_tprime(n, k) == div3);
                CHECK(c.s_star(n, k) == (even + p - odd) % p);
            }
        }
    }
}

TEST_CASE("k_sum against a per-term oracle") {
    for (u32 p : {13u, 101u, 997u}) {
        PrimeContext ctx(p);
        SumCache c(ctx);
        for (u32 n : {3u, 4u, 6u}) {
            for (u32 r = 0; r < n; ++r) {
                u64 want = 0;
                for (u64 j = 1; j < p; ++j)
                    if (j % n == static_cast<u64>(r) * p % n)
                        want = (want + mod_inv(static_cast<i64>(j), p)) % p;
                CHECK(c.k_sum(n, r) == want);
            }
        }
    }
}

TEST_CASE("b_sum against a per-term oracle") {
    u32 p = 101;
    PrimeContext ctx(p);
    SumCache c(ctx);
    for (auto [num, den] : {std::pair<i64, i64>{1, 2}, {2, 1}, {3, 5}}) {
        u64 b = mul_mod(static_cast<u64>(num), mod_inv(den, p), p);
        for (u32 n : {1u, 2u, 8u}) {
            for (u32 k = 0; k < n; ++k) {
                u64 lo = static_cast<u64>(k) * p / n, hi = static_cast<u64>(k + 1) * p / n;
                u64 want = 0;
                for (u64 j = lo + 1; j <= hi && j < p; ++j)
                    want = (want + mul_mod(mod_pow(b, j, p), mod_inv(static_cast<i64>(j), p), p)) % p;
                CHECK(c.b_sum(num, den, k, n) == want);
            }
        }
    }
    CHECK_THROWS_AS(c.b_sum(101, 1, 0, 1), NotUnitError);
}

TEST_CASE("b_sum at b = 1/2 over the full range is the Fermat quotient") {
    for (u32 p : {11u, 1093u, 9973u}) {
        PrimeContext ctx(p);
        SumCache c(ctx);
        CHECK(c.b_sum(1, 2, 0, 1) == c.q(2));
    }
}

TEST_CASE("single-shot wrappers agree with the cache") {
    PrimeContext ctx(97);
    SumCache c(ctx);
    CHECK(s(ctx, 6, 2) == c.s(6, 2));
    CHECK(s_prime(ctx, 4, 1) == c.s_prime(4, 1));
    CHECK(k_sum(ctx, 6, 5) == c.k_sum(6, 5));
    CHECK(b_sum(ctx, 1, 2, 0, 2) == c.b_sum(1, 2, 0, 2));
}
