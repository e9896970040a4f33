#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arith/mertens.hpp"
#include "oracles.hpp"

namespace arith {
namespace {

const MertensEngine& engine_1e6() {
    static const MertensEngine e(1'000'000);
    return e;
}

TEST(MertensDense, Examples) {
    const auto& e = engine_1e6();
    EXPECT_EQ(mertens_dense(1, e), 1);
    EXPECT_EQ(mertens_dense(2, e), 0);
    const auto brute = oracle::mertens_table(10);
    EXPECT_EQ(brute[10], -1);
    EXPECT_EQ(mertens_dense(10, e), brute[10]);
}

TEST(MertensDense, OutOfRangePointsToSublinear) {
    const MertensEngine e(100);
    try {
        (void)mertens_dense(101, e);
        FAIL() << "expected out_of_range";
    } catch (const std::out_of_range& ex) {
        EXPECT_NE(std::string(ex.what()).find("mertens_sublinear"), std::string::npos);
    }
    EXPECT_THROW(MertensEngine(0), capacity_error);
}

TEST(MertensDense, TableInvariants) {
    const auto d = engine_1e6().dense_values();
    ASSERT_EQ(d[1], 1);
    for (std::size_t k = 2; k < d.size(); ++k) ASSERT_LE(std::abs(d[k] - d[k - 1]), 1);
    const auto brute = oracle::mertens_table(20'000);
    for (u64 n = 1; n <= 20'000; ++n) ASSERT_EQ(d[n], brute[n]);
}

TEST(MertensSublinear, SmallDenseTableExercisesMemo) {
    // dense_limit 100 forces every x > 100 through the large-quotient memo
    const MertensEngine small(100);
    const auto brute = oracle::mertens_table(10'000);
    EXPECT_EQ(mertens_sublinear(10, small), -1);
    for (u64 x = 1; x <= 10'000; ++x) ASSERT_EQ(mertens_sublinear(x, small), brute[x]) << x;
}

TEST(MertensSublinear, AgreesWithDenseTo1e4) {
    const auto& e = engine_1e6();
    for (u64 x = 1; x <= 10'000; ++x) ASSERT_EQ(mertens_sublinear(x, e), mertens_dense(x, e));
}

TEST(MertensSublinear, OneBillionTwoDenseLimits) {
    const i64 a = mertens_sublinear(1'000'000'000, engine_1e6());
    const MertensEngine bigger(3'000'000);
    const i64 b = mertens_sublinear(1'000'000'000, bigger);
    EXPECT_EQ(a, b);
    EXPECT_LT(static_cast<double>(std::abs(a)), std::sqrt(1e9));
}

TEST(MertensSublinear, RecommendedDenseLimit) {
    EXPECT_EQ(MertensEngine::recommended_dense_limit(1000), 1'000'000u);
    EXPECT_EQ(MertensEngine::recommended_dense_limit(1'000'000'000'000ULL), 100'000'000u);
}

TEST(QuotientSum, Examples) {
    const auto& e = engine_1e6();
    EXPECT_EQ(quotient_sum(1, e), 1);
    const auto m = oracle::mertens_table(100);
    i64 brute = 0;
    for (u64 n = 1; n <= 100; ++n) brute += m[100 / n];
    EXPECT_EQ(brute, 1);
    EXPECT_EQ(quotient_sum(100, e), brute);
    EXPECT_EQ(quotient_sum(1'000'000, e), 1);
}

TEST(QuotientSum, BruteForceBlockingOracleAt1e6) {
    // every term M(floor(1e6/n)) from the dense table, no blocking
    const auto d = engine_1e6().dense_values();
    i64 brute = 0;
    for (u64 n = 1; n <= 1'000'000; ++n) brute += d[1'000'000 / n];
    EXPECT_EQ(brute, 1);
}

TEST(QuotientSum, RandomSampleIsOne) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const u64 x = 1 + rng() % 100'000;
        ASSERT_EQ(quotient_sum(x, engine_1e6()), 1) << x;
    }
}

TEST(QuotientSum, AboveDenseLimit) {
    const MertensEngine small(1000);
    for (const u64 x : {1001ULL, 54'321ULL, 1'000'000ULL, 10'000'000ULL})
        EXPECT_EQ(quotient_sum(x, small), 1) << x;
    EXPECT_THROW(quotient_sum(kQuotientSumCeiling + 1, small), capacity_error);
}

TEST(MertensBounds, BelowSqrtTo1e4AndHalfSqrtTo5e6) {
    const MertensEngine e(5'000'000);
    const auto d = e.dense_values();
    // n = 1 is the equality case |M(1)| = sqrt(1)
    EXPECT_EQ(d[1] * d[1], 1);
    for (u64 n = 2; n <= 10'000; ++n) ASSERT_LT(static_cast<u64>(d[n] * d[n]), n) << n;
    for (u64 n = 201; n <= 5'000'000; ++n) ASSERT_LT(4 * static_cast<u64>(d[n] * d[n]), n) << n;
}

}  // namespace
}  // namespace arith
