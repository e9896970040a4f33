#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "arith/inequality.hpp"
#include "oracles.hpp"

namespace arith {
namespace {

const PrimeCountEngine& engine() {
    static const PrimeCountEngine e(10'000'000);
    return e;
}

const std::vector<u64>& pi_2e6() {
    static const auto t = oracle::pi_table(2'000'000);
    return t;
}

GapSign oracle_sign(u64 x) {
    const auto g = oracle::gap(x, pi_2e6());
    return g < 0 ? GapSign::negative : g > 0 ? GapSign::positive : GapSign::zero;
}

TEST(FloorDivExp, MatchesOracle) {
    for (u64 x = 0; x <= 20'000; ++x) ASSERT_EQ(floor_div_exp(x, 1), oracle::floor_div_e(x)) << x;
    for (const u64 x : {u64{1'000'000'007}, u64{38'358'837'677}, u64{99'999'999'977}})
        for (unsigned n = 1; n <= 6; ++n) EXPECT_EQ(floor_div_exp(x, n), oracle::floor_div_e(x, n));
    EXPECT_EQ(floor_div_exp(10, 1), 3u);
}

TEST(EvalInequality, AtTen) {
    const auto r = eval_inequality(10, engine());
    EXPECT_EQ(r.pi_x, 4u);
    EXPECT_EQ(r.x_over_e, 3u);
    EXPECT_EQ(r.pi_x_over_e, 2u);
    EXPECT_EQ(r.lhs, 16.0L);
    const double rhs = (oracle::e() * 10 / log(oracle::Big(10)) * 2).convert_to<double>();
    EXPECT_NEAR(static_cast<double>(r.rhs), rhs, 1e-12);
    EXPECT_NEAR(static_cast<double>(r.rhs), 23.6106, 1e-4);
    EXPECT_EQ(r.g_sign, GapSign::negative);
    EXPECT_TRUE(r.holds());
}

TEST(EvalInequality, AtThreeAndDomain) {
    const auto r = eval_inequality(3, engine());
    EXPECT_EQ(r.x_over_e, 1u);
    EXPECT_EQ(r.pi_x_over_e, 0u);
    EXPECT_EQ(r.rhs, 0.0L);
    EXPECT_EQ(r.g_sign, GapSign::positive);
    EXPECT_THROW(eval_inequality(2, engine()), std::domain_error);
    EXPECT_THROW(eval_inequality(kInequalityCeiling + 1, engine()), capacity_error);
}

TEST(EvalInequality, SignsMatchOracle) {
    for (u64 x = 3; x <= 20'000; ++x) ASSERT_EQ(eval_inequality(x, engine()).g_sign, oracle_sign(x)) << x;
}

TEST(ScanRange, AllIntegersMatchesOracle) {
    const auto s = scan_range(2, 20'000, false, engine());
    std::vector<u64> expected;
    for (u64 x = 2; x <= 20'000; ++x)
        if (oracle_sign(x) != GapSign::negative) expected.push_back(x);
    EXPECT_EQ(s.counterexamples, expected);
    EXPECT_EQ(s.step_rule, "all-integers");
    EXPECT_EQ(s.evaluated(), 19'999u);
    EXPECT_EQ(s.indeterminate_count, 0u);
    EXPECT_EQ(s.fails_count, expected.size());
}

TEST(ScanRange, SinglePointAndErrors) {
    const auto s = scan_range(4, 4, false, engine());
    EXPECT_EQ(s.evaluated(), 1u);
    EXPECT_EQ(s.counterexamples, std::vector<u64>{4});  // pi(floor(4/e)) = 0
    EXPECT_THROW(scan_range(10, 9, false, engine()), std::invalid_argument);
    EXPECT_THROW(scan_range(1, 9, false, engine()), std::domain_error);
}

TEST(ScanRange, PrimesOnlyIsTheRestrictionToPrimes) {
    const auto all = scan_range(2, 10'000, false, engine());
    const auto primes = scan_range(2, 10'000, true, engine());
    EXPECT_EQ(primes.step_rule, "primes");
    std::vector<u64> prime_part;
    std::copy_if(all.counterexamples.begin(), all.counterexamples.end(),
                 std::back_inserter(prime_part), [](u64 x) { return oracle::is_prime(x); });
    EXPECT_EQ(primes.counterexamples, prime_part);
    EXPECT_EQ(primes.evaluated(), pi_2e6()[10'000]);
    std::set<u64> uni(all.counterexamples.begin(), all.counterexamples.end());
    uni.insert(primes.counterexamples.begin(), primes.counterexamples.end());
    EXPECT_EQ(uni.size(), all.counterexamples.size());
}

TEST(ScanRange, ThreadCountDoesNotChangeResult) {
    const auto one = scan_range(2, 300'000, false, engine());
    for (const unsigned t : {2u, 3u, 8u}) {
        ScanOptions o;
        o.threads = t;
        o.segment_length = 4096;
        EXPECT_EQ(scan_range(2, 300'000, false, engine(), o), one) << t;
    }
    EXPECT_EQ(scan_range(2, 300'000, false, engine()), one);
}

TEST(ScanRange, RowCallbackIsOrdered) {
    std::vector<u64> seen;
    ScanOptions o;
    o.threads = 4;
    o.on_row = [&](const InequalityReport& r) { seen.push_back(r.x); };
    scan_range(1000, 10'000, true, engine(), o);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(seen.size(), pi_2e6()[10'000] - pi_2e6()[999]);
}

TEST(Monotonicity, ProbeMatchesOracle) {
    const auto rep = monotonicity_probe(201, 10'000, 1, engine());
    EXPECT_EQ(rep.points, 9800u);
    std::vector<u64> expected;
    for (u64 x = 201; x < 10'000; ++x)
        if (oracle::gap(x + 1, pi_2e6()) > oracle::gap(x, pi_2e6())) expected.push_back(x);
    std::vector<u64> got;
    for (const auto& v : rep.violations) {
        EXPECT_EQ(v.x_next, v.x + 1);
        EXPECT_GT(v.margin, 0);
        got.push_back(v.x);
    }
    EXPECT_EQ(got, expected);
}

TEST(Monotonicity, EdgesAndDeterminism) {
    const auto one = monotonicity_probe(10, 10, 1, engine());
    EXPECT_EQ(one.points, 1u);
    EXPECT_TRUE(one.violations.empty());
    EXPECT_THROW(monotonicity_probe(2, 10, 1, engine()), std::domain_error);
    EXPECT_THROW(monotonicity_probe(10, 20, 0, engine()), std::invalid_argument);
    const auto a = monotonicity_probe(1'000'000, 2'000'000, 1000, engine());
    const auto b = monotonicity_probe(1'000'000, 2'000'000, 1000, engine());
    EXPECT_EQ(a.points, 1001u);
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        EXPECT_EQ(a.violations[i].x, b.violations[i].x);
        EXPECT_EQ(a.violations[i].margin, b.violations[i].margin);
    }
}

TEST(HassaniPower, NEqualsOneIsTheBaseInequality) {
    for (const u64 x : {u64{10}, u64{100}, u64{1000}, u64{3000}, u64{1'000'000}}) {
        const auto cmp = hassani_power_inequality(x, 1, engine());
        const auto base = eval_inequality(x, engine());
        ASSERT_TRUE(cmp.determinate);
        EXPECT_EQ(cmp.sign, static_cast<int>(base.g_sign)) << x;
        EXPECT_EQ(cmp.holds, base.holds());
    }
}

TEST(HassaniPower, AgainstOracle) {
    const auto& e = engine();
    for (const auto& [x, n] : {std::pair<u64, unsigned>{1'000'000, 2}, {1'000'000, 3}, {5'000'000, 4},
                              {100'000, 2}, {1000, 2}}) {
        const auto cmp = hassani_power_inequality(x, n, e);
        const auto g = oracle::power_gap(x, n, e.pi(x), e.pi(oracle::floor_div_e(x, n)));
        ASSERT_TRUE(cmp.determinate);
        EXPECT_EQ(cmp.sign, g < 0 ? -1 : 1) << x << " n=" << n;
        EXPECT_EQ(cmp.holds, g < 0);
        EXPECT_LT(cmp.error_bound, 1e-9);
    }
}

TEST(HassaniPower, Domain) {
    EXPECT_THROW(hassani_power_inequality(10, 3, engine()), std::domain_error);
    EXPECT_THROW(hassani_power_inequality(10, 0, engine()), std::domain_error);
    EXPECT_THROW(hassani_power_inequality(1000, 63, engine()), std::domain_error);
    EXPECT_THROW(hassani_power_inequality(2, 1, engine()), std::domain_error);
}

TEST(HassaniCubic, AgainstOracle) {
    const auto& e = engine();
    for (const auto& [x, n] : {std::pair<u64, unsigned>{100'000, 2}, {1'000'000, 2}, {1'000'000, 3},
                              {1000, 2}, {100, 1}, {100'000, 1}}) {
        const auto cmp = hassani_cubic_inequality(x, n, e);
        const auto g = oracle::cubic_gap(x, n, e.pi(x), e.pi(oracle::floor_div_e(x, 1)),
                                         e.pi(oracle::floor_div_e(x, 2)));
        ASSERT_TRUE(cmp.determinate);
        EXPECT_EQ(cmp.sign, g > 0 ? 1 : -1) << x << " n=" << n;
    }
}

TEST(HassaniCubic, NEqualsOneTaggedAndDomain) {
    const auto cmp = hassani_cubic_inequality(100'000, 1, engine());
    EXPECT_NE(cmp.note.find("n=1"), std::string::npos);
    EXPECT_TRUE(hassani_cubic_inequality(100'000, 2, engine()).note.empty());
    EXPECT_THROW(hassani_cubic_inequality(10, 2, engine()), std::domain_error);
    EXPECT_THROW(hassani_cubic_inequality(1000, 0, engine()), std::domain_error);
}

TEST(Galway, KnownCounterexampleViaRecursion) {
    const PrimeCountEngine e(1000);  // forces the recursion path
    const auto r = eval_inequality(kGalwayCounterexample, e);
    EXPECT_EQ(r.g_sign, GapSign::positive);
    EXPECT_TRUE(oracle::is_prime(kGalwayCounterexample));
}

}  // namespace
}  // namespace arith
