#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith/sieve.hpp"

namespace arith {

inline constexpr u64 kDefaultPiDenseLimit = 100'000'000;
inline constexpr u64 kPiDenseCeiling = 4'000'000'000;
inline constexpr u64 kPiSublinearCeiling = 100'000'000'000;
inline constexpr u64 kPsiCeiling = 10'000'000'000;

/// Exact pi(x) for x up to 10^11 by the floor-quotient recursion: for each
/// prime p <= sqrt(x), S(v) -= S(v/p) - S(p-1) over every quotient v >= p^2.
/// Cost O(x^{3/4}) time, O(sqrt x) memory.
inline u64 pi_sublinear(u64 x) {
    if (x > kPiSublinearCeiling)
        throw capacity_error("pi_sublinear: x above " + std::to_string(kPiSublinearCeiling));
    if (x < 2) return 0;
    const u64 r = isqrt(x);
    std::vector<i64> small(r + 1), large(r + 1);
    for (u64 v = 1; v <= r; ++v) small[v] = static_cast<i64>(v) - 1;
    for (u64 n = 1; n <= r; ++n) large[n] = static_cast<i64>(x / n) - 1;
    for (u64 p = 2; p <= r; ++p) {
        if (small[p] == small[p - 1]) continue;
        const i64 sp = small[p - 1];
        const u64 p2 = p * p;
        const u64 n_end = std::min(r, x / p2);
        const u64 n_direct = std::min(n_end, r / p);
        for (u64 n = 1; n <= n_direct; ++n) large[n] -= large[n * p] - sp;
        for (u64 n = n_direct + 1; n <= n_end; ++n) large[n] -= small[x / (n * p)] - sp;
        for (u64 v = r; v >= p2; --v) small[v] -= small[v / p] - sp;
    }
    return static_cast<u64>(large[1]);
}

/// Dense prime counts up to dense_limit: an odd-only primality bitset with a
/// running count at every 64-bit word.
class PrimeCountEngine {
public:
    explicit PrimeCountEngine(u64 dense_limit = kDefaultPiDenseLimit,
                              std::size_t segment_length = kDefaultSegmentLength)
        : dense_limit_(dense_limit) {
        if (dense_limit == 0 || dense_limit > kPiDenseCeiling)
            throw capacity_error("PrimeCountEngine: dense_limit must lie in [1, " +
                                 std::to_string(kPiDenseCeiling) + "]");
        // bit i <-> odd number 2i+1
        const u64 bits = dense_limit / 2 + 1;
        words_.assign((bits + 63) / 64, 0);
        for_each_prime(SegmentPlan{1, dense_limit, segment_length}, [this](u64 p) {
            if (p == 2) return;
            const u64 i = p / 2;
            words_[i >> 6] |= u64{1} << (i & 63);
        });
        prefix_.resize(words_.size());
        std::uint32_t running = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            prefix_[w] = running;
            running += static_cast<std::uint32_t>(std::popcount(words_[w]));
        }
    }

    u64 dense_limit() const { return dense_limit_; }

    /// pi(x) for x <= dense_limit.
    u64 pi_dense(u64 x) const {
        if (x > dense_limit_)
            throw std::out_of_range("pi_exact: x=" + std::to_string(x) + " exceeds dense_limit " +
                                    std::to_string(dense_limit_) + "; use pi_sublinear");
        if (x < 2) return 0;
        const u64 i = (x - 1) / 2;  // largest odd <= x is 2i+1
        const u64 w = i >> 6;
        const u64 mask = (i & 63) == 63 ? ~u64{0} : (u64{1} << ((i & 63) + 1)) - 1;
        return 1 + prefix_[w] + static_cast<u64>(std::popcount(words_[w] & mask));
    }

    /// pi(x) from the dense table when possible, else by the recursion.
    u64 pi(u64 x) const { return x <= dense_limit_ ? pi_dense(x) : pi_sublinear(x); }

private:
    u64 dense_limit_;
    std::vector<u64> words_;
    std::vector<std::uint32_t> prefix_;
};

inline u64 pi_exact(u64 x, const PrimeCountEngine& engine) { return engine.pi_dense(x); }

inline u64 pi_sublinear(u64 x, const PrimeCountEngine& engine) {
    (void)engine;
    return pi_sublinear(x);
}

/// Compensated (Kahan-Babuska) accumulator.
template <class Real>
class CompensatedSum {
public:
    void add(Real v) {
        const Real t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_{0};
    Real comp_{0};
};

/// theta(y) = sum of log p over primes p <= y, and pi(y), at each query point.
struct ThetaPoint {
    u64 y = 0;
    double theta = 0.0;
    u64 pi = 0;
};

/// One segmented pass over primes up to max(points); points may be in any
/// order and repeat. Results are returned in the order given.
inline std::vector<ThetaPoint> theta_at(std::span<const u64> points,
                                        std::size_t segment_length = kDefaultSegmentLength) {
    std::vector<ThetaPoint> out(points.size());
    if (points.empty()) return out;
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

    CompensatedSum<double> theta;
    u64 count = 0;
    std::size_t next = 0;
    auto flush_below = [&](u64 bound) {
        // record every point y < bound
        while (next < order.size() && points[order[next]] < bound) {
            out[order[next]] = {points[order[next]], theta.value(), count};
            ++next;
        }
    };
    const u64 top = points[order.back()];
    if (top >= 2) {
        for_each_prime(SegmentPlan{1, top, segment_length}, [&](u64 p) {
            flush_below(p);
            theta.add(std::log(static_cast<double>(p)));
            ++count;
        });
    }
    flush_below(~u64{0});
    return out;
}

/// psi(x) with the count of prime powers <= x.
struct PsiValue {
    u64 x = 0;
    double psi = 0.0;
    u64 terms = 0;        // prime powers <= x
    u64 prime_count = 0;  // pi(x), the m = 1 layer of terms
};

/// psi at each point via psi(x) = sum_{m>=1} theta(x^{1/m}).
inline std::vector<PsiValue> psi_many(std::span<const u64> xs,
                                      std::size_t segment_length = kDefaultSegmentLength) {
    std::vector<u64> roots;
    std::vector<std::size_t> offsets;
    for (const u64 x : xs) {
        if (x == 0) throw std::invalid_argument("psi: x must be >= 1");
        if (x > kPsiCeiling) throw capacity_error("psi: x above " + std::to_string(kPsiCeiling));
        offsets.push_back(roots.size());
        for (unsigned m = 1;; ++m) {
            const u64 root = iroot(x, m);
            if (root < 2) break;
            roots.push_back(root);
        }
    }
    offsets.push_back(roots.size());
    const auto thetas = theta_at(roots, segment_length);
    std::vector<PsiValue> out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CompensatedSum<double> psi;
        u64 terms = 0;
        for (std::size_t j = offsets[i]; j < offsets[i + 1]; ++j) {
            psi.add(thetas[j].theta);
            terms += thetas[j].pi;
        }
        out.push_back({xs[i], psi.value(), terms,
                       offsets[i] < offsets[i + 1] ? thetas[offsets[i]].pi : 0});
    }
    return out;
}

inline PsiValue psi_exact(u64 x) {
    const u64 one[] = {x};
    return psi_many(one).front();
}

/// Answers pi(y) for any y in [lo, hi] after one count at lo - 1 and one
/// segmented pass over the window.
class PrimeCursor {
public:
    PrimeCursor(u64 lo, u64 hi, const PrimeCountEngine& engine,
                std::size_t segment_length = kDefaultSegmentLength)
        : lo_(std::max<u64>(lo, 1)), hi_(hi) {
        if (lo_ > hi_) throw std::invalid_argument("PrimeCursor: empty window");
        base_ = engine.pi(lo_ - 1);
        primes_ = primes_in_range(SegmentPlan{lo_, hi_, segment_length});
    }

    u64 pi(u64 y) const {
        if (y + 1 < lo_ || y > hi_)
            throw std::out_of_range("PrimeCursor: y=" + std::to_string(y) + " outside window");
        const auto it = std::upper_bound(primes_.begin(), primes_.end(), y);
        return base_ + static_cast<u64>(it - primes_.begin());
    }

    std::span<const u64> primes() const { return primes_; }

private:
    u64 lo_, hi_;
    u64 base_ = 0;
    std::vector<u64> primes_;
};

}  // namespace arith
