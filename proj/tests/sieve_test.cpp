#include <gtest/gtest.h>

#include <random>

#include "arith/sieve.hpp"
#include "oracles.hpp"

namespace arith {
namespace {

TEST(MuTable, SmallValues) {
    EXPECT_EQ(build_mu_table(1).mu(1), 1);
    const auto t = build_mu_table(30);
    EXPECT_EQ(t.mu(30), -1);
    EXPECT_EQ(t.mu(12), 0);
    EXPECT_EQ(t.mu(1), 1);
    EXPECT_EQ(t.mu(29), -1);
    EXPECT_TRUE(t.is_prime(29));
    EXPECT_FALSE(t.is_prime(1));
    EXPECT_FALSE(t.is_prime(27));
}

TEST(MuTable, CapacityAndRange) {
    EXPECT_THROW(build_mu_table(0), capacity_error);
    EXPECT_THROW(build_mu_table(kMuTableCeiling + 1), capacity_error);
    EXPECT_THROW(build_mu_table(1000, 999), capacity_error);
    try {
        build_mu_table(kMuTableCeiling + 1);
    } catch (const capacity_error& e) {
        EXPECT_NE(std::string(e.what()).find("1000000000"), std::string::npos);
    }
    const auto t = build_mu_table(10);
    EXPECT_THROW(t.mu(11), std::out_of_range);
    EXPECT_THROW(t.mu(0), std::out_of_range);
}

TEST(MuTable, MatchesTrialDivisionTo1e5) {
    const auto t = build_mu_table(100'000);
    for (u64 n = 1; n <= 100'000; ++n) {
        ASSERT_EQ(t.mu(n), oracle::mu(n)) << n;
        ASSERT_EQ(t.is_prime(n), oracle::is_prime(n)) << n;
    }
}

TEST(MuTable, SquarefreeCountMatchesInclusionExclusion) {
    const u64 n = 1'000'000;
    const auto t = build_mu_table(n);
    u64 nonzero = 0;
    for (const auto v : t.values().subspan(1)) nonzero += v != 0;
    i64 expected = 0;
    for (u64 d = 1; d <= 1000; ++d) expected += oracle::mu(d) * static_cast<i64>(n / (d * d));
    EXPECT_EQ(static_cast<i64>(nonzero), expected);
}

TEST(MobiusDivisorSum, Examples) {
    const auto t = build_mu_table(10'000);
    EXPECT_EQ(mobius_divisor_sum(1, t), 1);
    EXPECT_EQ(mobius_divisor_sum(6, t), 0);
    // 5040 = 2^4 3^2 5 7: divisors enumerated by trial division
    i64 brute = 0;
    for (u64 d = 1; d <= 5040; ++d)
        if (5040 % d == 0) brute += oracle::mu(d);
    EXPECT_EQ(brute, 0);
    EXPECT_EQ(mobius_divisor_sum(5040, t), brute);
    for (u64 n = 2; n <= 10'000; ++n) ASSERT_EQ(mobius_divisor_sum(n, t), 0) << n;
    EXPECT_THROW(mobius_divisor_sum(10'001, t), std::out_of_range);
}

TEST(PrimesInRange, Examples) {
    EXPECT_EQ(primes_in_range({1, 10}), (std::vector<u64>{2, 3, 5, 7}));
    EXPECT_EQ(primes_in_range({90, 100}), (std::vector<u64>{97}));
    EXPECT_EQ(primes_in_range({2, 2}), (std::vector<u64>{2}));
    EXPECT_TRUE(primes_in_range({24, 28}).empty());
    EXPECT_THROW(primes_in_range({10, 9}), std::invalid_argument);
    EXPECT_THROW(primes_in_range({1, 10, 1}), std::invalid_argument);
}

TEST(PrimesInRange, NearOneBillionMatchesTrialDivision) {
    const u64 lo = 1'000'000'000, hi = lo + 100;
    std::vector<u64> expected;
    for (u64 n = lo; n <= hi; ++n)
        if (oracle::is_prime(n)) expected.push_back(n);
    EXPECT_EQ(primes_in_range({lo, hi}), expected);
}

TEST(PrimesInRange, TilingDoesNotChangeResult) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const u64 lo = 1 + rng() % 200'000;
        const u64 hi = lo + rng() % 50'000;
        const auto whole = primes_in_range({lo, hi, 1u << 20});
        for (const std::size_t len : {2u, 3u, 64u, 1000u, 4097u}) {
            const SegmentPlan plan{lo, hi, len};
            std::vector<u64> joined;
            u64 covered = 0, expect_lo = lo;
            for (const auto& seg : plan.segments()) {
                ASSERT_EQ(seg.lo, expect_lo);
                covered += seg.hi - seg.lo + 1;
                expect_lo = seg.hi + 1;
                const auto part = primes_in_range({seg.lo, seg.hi, len});
                joined.insert(joined.end(), part.begin(), part.end());
            }
            ASSERT_EQ(covered, hi - lo + 1);
            ASSERT_EQ(joined, whole) << lo << ".." << hi << " len " << len;
            ASSERT_EQ(primes_in_range(plan), whole);
        }
    }
}

TEST(SegmentedMu, AgreesWithLinearSieve) {
    const auto t = build_mu_table(200'000);
    std::vector<int> seen(200'001, 9);
    for_each_mu_segment(SegmentPlan{1, 200'000, 4096}, [&](u64 first, std::span<const std::int8_t> mu) {
        for (std::size_t i = 0; i < mu.size(); ++i) seen[first + i] = mu[i];
    });
    for (u64 n = 1; n <= 200'000; ++n) ASSERT_EQ(seen[n], t.mu(n)) << n;
}

TEST(SegmentedMu, OffsetWindowAboveSqrt) {
    const u64 lo = 10'000'000'000ULL, hi = lo + 2000;
    for_each_mu_segment(SegmentPlan{lo, hi, 512}, [&](u64 first, std::span<const std::int8_t> mu) {
        for (std::size_t i = 0; i < mu.size(); ++i) ASSERT_EQ(mu[i], oracle::mu(first + i));
    });
}

TEST(IntegerRoots, Exact) {
    EXPECT_EQ(isqrt(0), 0u);
    EXPECT_EQ(isqrt(99), 9u);
    EXPECT_EQ(isqrt(100), 10u);
    EXPECT_EQ(isqrt(999'999'999'999ULL), 999'999u);
    EXPECT_EQ(iroot(1'000'000'000'000ULL, 3), 10'000u);
    EXPECT_EQ(iroot(999'999'999'999ULL, 3), 9'999u);
    EXPECT_EQ(iroot(1024, 10), 2u);
    EXPECT_EQ(iroot(1023, 10), 1u);
}

}  // namespace
}  // namespace arith
