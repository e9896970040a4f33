#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith/errors.hpp"

namespace arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kMuTableCeiling = 1'000'000'000;
inline constexpr u64 kSegmentedSieveCeiling = 1'000'000'000'000;
inline constexpr std::size_t kDefaultSegmentLength = std::size_t{1} << 20;

/// Largest r with r*r <= n.
inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Largest r with r^m <= n (m >= 1).
inline u64 iroot(u64 n, unsigned m) {
    if (m == 1 || n < 2) return n;
    if (m == 2) return isqrt(n);
    auto pow_le = [n, m](u64 r) {
        // true iff r^m <= n, without overflow
        u64 acc = 1;
        for (unsigned i = 0; i < m; ++i) {
            if (acc > n / r) return false;
            acc *= r;
        }
        return true;
    };
    u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / m));
    if (r == 0) r = 1;
    while (r > 1 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

// Plain fixed-size bitset over 64-bit words.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits, bool value = false)
        : bits_(bits), words_((bits + 63) / 64, value ? ~u64{0} : u64{0}) {
        if (value && bits % 64 != 0) words_.back() &= (u64{1} << (bits % 64)) - 1;
    }

    std::size_t size() const { return bits_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= u64{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(u64{1} << (i & 63)); }
    std::span<const u64> words() const { return words_; }

private:
    std::size_t bits_ = 0;
    std::vector<u64> words_;
};

/// Möbius values and primality flags for 1..limit, built by a linear sieve.
/// Immutable after construction.
class MuTable {
public:
    u64 limit() const { return limit_; }

    int mu(u64 n) const {
        check(n);
        return mu_[n];
    }
    bool is_prime(u64 n) const {
        check(n);
        return is_prime_.test(n);
    }
    std::span<const std::int8_t> values() const { return mu_; }
    std::span<const std::uint32_t> primes() const { return primes_; }

    friend MuTable build_mu_table(u64 limit, u64 ceiling);

private:
    void check(u64 n) const {
        if (n == 0 || n > limit_)
            throw std::out_of_range("MuTable: n=" + std::to_string(n) + " outside [1, " +
                                    std::to_string(limit_) + "]");
    }

    u64 limit_ = 0;
    std::vector<std::int8_t> mu_;  // index 0 unused
    Bitset is_prime_;
    std::vector<std::uint32_t> primes_;
};

inline MuTable build_mu_table(u64 limit, u64 ceiling = kMuTableCeiling) {
    if (limit == 0 || limit > ceiling)
        throw capacity_error("build_mu_table: limit must lie in [1, " + std::to_string(ceiling) +
                             "], got " + std::to_string(limit));
    MuTable t;
    t.limit_ = limit;
    t.mu_.assign(limit + 1, 0);
    t.is_prime_ = Bitset(limit + 1);
    Bitset composite(limit + 1);
    t.mu_[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite.test(i)) {
            t.primes_.push_back(static_cast<std::uint32_t>(i));
            t.is_prime_.set(i);
            t.mu_[i] = -1;
        }
        for (std::uint32_t p : t.primes_) {
            const u64 m = i * p;
            if (m > limit) break;
            composite.set(m);
            if (i % p == 0) {
                t.mu_[m] = 0;
                break;
            }
            t.mu_[m] = static_cast<std::int8_t>(-t.mu_[i]);
        }
    }
    return t;
}

/// Sum of mu(d) over the divisors d of n.
inline i64 mobius_divisor_sum(u64 n, const MuTable& table) {
    if (n == 0 || n > table.limit())
        throw std::out_of_range("mobius_divisor_sum: n=" + std::to_string(n) +
                                " exceeds table limit " + std::to_string(table.limit()));
    i64 sum = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        sum += table.mu(d);
        if (d != n / d) sum += table.mu(n / d);
    }
    return sum;
}

/// Primes up to limit by a plain Eratosthenes pass; used for base primes.
inline std::vector<std::uint32_t> small_primes(u64 limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// Inclusive range [range_lo, range_hi] processed in windows of
/// segment_length integers.
struct SegmentPlan {
    u64 range_lo = 1;
    u64 range_hi = 1;
    std::size_t segment_length = kDefaultSegmentLength;

    void validate() const {
        if (range_lo == 0) throw std::invalid_argument("SegmentPlan: range_lo must be >= 1");
        if (range_lo > range_hi)
            throw std::invalid_argument("SegmentPlan: range_lo " + std::to_string(range_lo) +
                                        " > range_hi " + std::to_string(range_hi));
        if (segment_length < 2) throw std::invalid_argument("SegmentPlan: segment_length < 2");
        if (range_hi > kSegmentedSieveCeiling)
            throw capacity_error("SegmentPlan: range_hi above " +
                                 std::to_string(kSegmentedSieveCeiling));
    }

    struct Segment {
        u64 lo, hi;
    };

    // Tiling of the range; consecutive segments share no element.
    std::vector<Segment> segments() const {
        validate();
        std::vector<Segment> out;
        for (u64 lo = range_lo;; lo += segment_length) {
            const u64 hi = std::min<u64>(range_hi, lo + segment_length - 1);
            out.push_back({lo, hi});
            if (hi == range_hi) break;
        }
        return out;
    }
};

/// Calls on_prime(p) for every prime in the plan's range, ascending.
/// Odd-only segmented Eratosthenes with base primes up to sqrt(range_hi).
template <class OnPrime>
void for_each_prime(const SegmentPlan& plan, OnPrime&& on_prime) {
    plan.validate();
    const u64 lo = plan.range_lo, hi = plan.range_hi;
    if (lo <= 2 && 2 <= hi) on_prime(u64{2});
    if (hi < 3) return;

    const auto base = small_primes(isqrt(hi));
    // Segments cover odd numbers only: byte i stands for start + 2i.
    const u64 span_odds = std::max<u64>(1, plan.segment_length / 2);
    std::vector<std::uint8_t> marks(span_odds);
    u64 start = std::max<u64>(lo, 3) | 1;  // first odd >= max(lo, 3)
    while (start <= hi) {
        const u64 count = std::min<u64>(span_odds, (hi - start) / 2 + 1);
        const u64 last = start + 2 * (count - 1);
        std::fill_n(marks.begin(), count, std::uint8_t{0});
        for (std::size_t k = 1; k < base.size(); ++k) {
            const u64 p = base[k];
            if (p * p > last) break;
            u64 m = std::max(p * p, (start + p - 1) / p * p);
            if ((m & 1) == 0) m += p;
            for (u64 i = (m - start) / 2; i < count; i += p) marks[i] = 1;
        }
        for (u64 i = 0; i < count; ++i)
            if (!marks[i]) on_prime(start + 2 * i);
        if (last >= hi) break;
        start = last + 2;
    }
}

inline std::vector<u64> primes_in_range(const SegmentPlan& plan) {
    std::vector<u64> out;
    for_each_prime(plan, [&out](u64 p) { out.push_back(p); });
    return out;
}

inline u64 count_primes_in_range(const SegmentPlan& plan) {
    u64 n = 0;
    for_each_prime(plan, [&n](u64) { ++n; });
    return n;
}

/// Segmented Möbius sieve. Calls on_segment(first_n, span of mu values) for
/// consecutive windows covering [plan.range_lo, plan.range_hi].
template <class OnSegment>
void for_each_mu_segment(const SegmentPlan& plan, OnSegment&& on_segment) {
    plan.validate();
    const auto base = small_primes(isqrt(plan.range_hi));
    std::vector<std::int8_t> mu;
    std::vector<u64> prod;
    for (const auto& seg : plan.segments()) {
        const std::size_t len = seg.hi - seg.lo + 1;
        mu.assign(len, 1);
        prod.assign(len, 1);
        for (const u64 p : base) {
            for (u64 m = (seg.lo + p - 1) / p * p; m <= seg.hi; m += p) {
                mu[m - seg.lo] = static_cast<std::int8_t>(-mu[m - seg.lo]);
                prod[m - seg.lo] *= p;
            }
            const u64 sq = p * p;
            if (sq > seg.hi) continue;
            for (u64 m = (seg.lo + sq - 1) / sq * sq; m <= seg.hi; m += sq) mu[m - seg.lo] = 0;
        }
        // What remains after dividing out the small primes is 1 or one prime.
        for (std::size_t i = 0; i < len; ++i)
            if (mu[i] != 0 && prod[i] != seg.lo + i) mu[i] = static_cast<std::int8_t>(-mu[i]);
        on_segment(seg.lo, std::span<const std::int8_t>(mu.data(), len));
    }
}

}  // namespace arith
