#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith/sieve.hpp"

namespace arith {

inline constexpr u64 kMertensSublinearCeiling = 1'000'000'000'000;
inline constexpr u64 kQuotientSumCeiling = 100'000'000'000;

/// Dense table of M(1..D) built from a segmented Möbius sieve. The table is
/// immutable once built; sublinear queries keep their memo in a per-call
/// scratch object, so one engine can serve concurrent queries.
class MertensEngine {
public:
    explicit MertensEngine(u64 dense_limit, std::size_t segment_length = kDefaultSegmentLength)
        : dense_limit_(dense_limit) {
        if (dense_limit == 0 || dense_limit > kMuTableCeiling)
            throw capacity_error("MertensEngine: dense_limit must lie in [1, " +
                                 std::to_string(kMuTableCeiling) + "]");
        dense_.assign(dense_limit + 1, 0);
        std::int32_t running = 0;
        for_each_mu_segment(SegmentPlan{1, dense_limit, segment_length},
                            [&](u64 first, std::span<const std::int8_t> mu) {
                                for (std::size_t i = 0; i < mu.size(); ++i) {
                                    running += mu[i];
                                    dense_[first + i] = running;
                                }
                            });
    }

    /// Default dense size for a sublinear query at x.
    static u64 recommended_dense_limit(u64 x) {
        const auto t = static_cast<u64>(std::ceil(std::cbrt(static_cast<double>(x)) *
                                                  std::cbrt(static_cast<double>(x))));
        return std::max<u64>(1'000'000, t);
    }

    u64 dense_limit() const { return dense_limit_; }

    i64 dense(u64 x) const {
        if (x == 0) return 0;
        if (x > dense_limit_)
            throw std::out_of_range("mertens_dense: x=" + std::to_string(x) +
                                    " exceeds dense_limit " + std::to_string(dense_limit_) +
                                    "; use mertens_sublinear");
        return dense_[x];
    }

    std::span<const std::int32_t> dense_values() const { return dense_; }

private:
    u64 dense_limit_;
    std::vector<std::int32_t> dense_;  // dense_[0] = 0
};

inline i64 mertens_dense(u64 x, const MertensEngine& engine) { return engine.dense(x); }

namespace detail {

// Sum over k in [k_lo, v] of M(floor(v/k)) restricted to quotients <= D,
// grouped over blocks of equal quotient. Requires floor(v/k_lo) <= D.
inline i64 small_quotient_block_sum(u64 v, u64 k_lo, std::span<const std::int32_t> dense) {
    i64 sum = 0;
    for (u64 k = k_lo; k <= v;) {
        const u64 q = v / k;
        const u64 k_hi = v / q;
        sum += static_cast<i64>(k_hi - k + 1) * dense[q];
        k = k_hi + 1;
    }
    return sum;
}

}  // namespace detail

/// Values M(floor(x/n)) for every quotient above the dense limit, indexed
/// by n. This is the per-query memo.
class MertensQuotients {
public:
    MertensQuotients(u64 x, const MertensEngine& engine) : x_(x), engine_(&engine) {
        const u64 d = engine.dense_limit();
        const u64 n_max = x / (d + 1);  // floor(x/n) > d  <=>  n <= n_max
        large_.assign(n_max + 1, 0);
        const auto dense = engine.dense_values();
        for (u64 n = n_max; n >= 1; --n) {
            const u64 v = x / n;
            // M(v) = 1 - sum_{k=2}^{v} M(floor(v/k))
            i64 acc = 1;
            const u64 k_big = v / (d + 1);  // k <= k_big keeps floor(v/k) above d
            for (u64 k = 2; k <= k_big; ++k) acc -= large_[n * k];
            acc -= detail::small_quotient_block_sum(v, std::max<u64>(2, k_big + 1), dense);
            assert(acc >= -static_cast<i64>(v) && acc <= static_cast<i64>(v));
            large_[n] = acc;
        }
    }

    u64 x() const { return x_; }

    /// M(floor(x/n)).
    i64 at_index(u64 n) const {
        const u64 q = x_ / n;
        if (q <= engine_->dense_limit()) return engine_->dense_values()[q];
        return large_[n];
    }

private:
    u64 x_;
    const MertensEngine* engine_;
    std::vector<i64> large_;  // large_[n] = M(x/n) for x/n > dense_limit
};

/// M(x) by the quotient recursion; falls back to the dense table when
/// x fits in it.
inline i64 mertens_sublinear(u64 x, const MertensEngine& engine) {
    if (x > kMertensSublinearCeiling)
        throw capacity_error("mertens_sublinear: x above " +
                             std::to_string(kMertensSublinearCeiling));
    if (x == 0) return 0;
    if (x <= engine.dense_limit()) {
        // Run the recursion once at the top level so small x still exercises
        // the block grouping.
        if (x == 1) return 1;
        return 1 - detail::small_quotient_block_sum(x, 2, engine.dense_values());
    }
    return MertensQuotients(x, engine).at_index(1);
}

/// Sum over n <= x of M(floor(x/n)), grouped over blocks of equal quotient.
///
/// Quotients above the dense limit come from the recursion, which is itself
/// this identity; the result is therefore an independent check only for the
/// part of the quotient set covered by the dense table.
inline i64 quotient_sum(u64 x, const MertensEngine& engine) {
    if (x > kQuotientSumCeiling)
        throw capacity_error("quotient_sum: x above " + std::to_string(kQuotientSumCeiling));
    if (x == 0) return 0;
    const auto dense = engine.dense_values();
    if (x <= engine.dense_limit()) return detail::small_quotient_block_sum(x, 1, dense);
    const MertensQuotients quotients(x, engine);
    i64 sum = 0;
    for (u64 n = 1; n <= x;) {
        const u64 q = x / n;
        const u64 n_hi = x / q;
        sum += static_cast<i64>(n_hi - n + 1) * quotients.at_index(n);
        n = n_hi + 1;
    }
    return sum;
}

}  // namespace arith
