#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith/chebyshev.hpp"
#include "arith/mertens.hpp"
#include "arith/sieve.hpp"

namespace arith {

enum class Claim {
    mu_over_d,      // sum mu(d)/d = O(1/log x)
    mu_log_over_d,  // sum mu(d) log d / d = O(1)
    mertens_order,  // M(x) = O(sqrt x)
    psi_identity,   // psi(x) = x - sum M(x/n) + O(sqrt x)
    psi_lemma,      // psi(x) = x + O(x log^2 x)
    pi_estimate,    // pi(x) = psi(x)/log x + O(x/log^2 x)
};

inline constexpr std::pair<Claim, std::string_view> kClaimNames[] = {
    {Claim::mu_over_d, "mu-over-d"},       {Claim::mu_log_over_d, "mu-log-over-d"},
    {Claim::mertens_order, "mertens-order"}, {Claim::psi_identity, "psi-identity"},
    {Claim::psi_lemma, "psi-lemma"},       {Claim::pi_estimate, "pi-estimate"},
};

inline std::string_view claim_name(Claim c) {
    for (const auto& [claim, name] : kClaimNames)
        if (claim == c) return name;
    return "?";
}

inline std::optional<Claim> parse_claim(std::string_view s) {
    for (const auto& [claim, name] : kClaimNames)
        if (name == s) return claim;
    return std::nullopt;
}

/// Default acceptance levels. The order estimates carry no explicit
/// constants; these leave at least 2x headroom over observed behaviour.
inline double default_threshold(Claim c) {
    switch (c) {
        case Claim::mu_over_d: return 2.0;
        case Claim::mu_log_over_d: return 3.0;
        case Claim::mertens_order: return 1.0;
        case Claim::psi_identity: return 3.0;
        case Claim::psi_lemma: return 0.05;
        case Claim::pi_estimate: return 2.0;
    }
    return 0.0;
}

struct SideCheck {
    std::string name;
    bool ok = true;
};

struct BoundReport {
    Claim claim = Claim::mu_over_d;
    std::vector<u64> sample_points;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    double threshold = 0.0;
    std::vector<SideCheck> side_checks;
    bool pass = false;

    void add(u64 x, double ratio) {
        sample_points.push_back(x);
        ratios.push_back(ratio);
        max_ratio = std::max(max_ratio, ratio);
    }

    void finish() {
        pass = !sample_points.empty() && max_ratio <= threshold;
        for (const auto& s : side_checks) pass = pass && s.ok;
    }
};

/// Geometric sample grid on [lo, hi]. With count == 0 consecutive points
/// grow by `ratio`; otherwise `count` points are spread evenly in log scale.
/// Always contains lo and hi; ascending, no repeats.
inline std::vector<u64> geometric_samples(u64 lo, u64 hi, std::size_t count = 0,
                                          double ratio = 1.2) {
    if (lo == 0 || lo > hi) throw std::invalid_argument("geometric_samples: need 1 <= lo <= hi");
    std::vector<u64> pts{lo};
    if (count == 0) {
        if (!(ratio > 1.0)) throw std::invalid_argument("geometric_samples: ratio must be > 1");
        for (double v = static_cast<double>(lo) * ratio; v < static_cast<double>(hi); v *= ratio)
            pts.push_back(static_cast<u64>(std::llround(v)));
    } else {
        const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
        for (std::size_t i = 1; i + 1 < count; ++i)
            pts.push_back(static_cast<u64>(
                std::llround(std::exp(a + (b - a) * static_cast<double>(i) /
                                              static_cast<double>(count - 1)))));
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [&](u64 v) { return v < lo || v > hi; });
    return pts;
}

namespace detail {

// Streams mu(1..x_max); calls on_value(n, mu) in order.
template <class F>
void stream_mu(u64 x_max, F&& on_value) {
    for_each_mu_segment(SegmentPlan{1, x_max}, [&](u64 first, std::span<const std::int8_t> mu) {
        for (std::size_t i = 0; i < mu.size(); ++i) on_value(first + i, mu[i]);
    });
}

template <class Weight>
BoundReport weighted_mu_sum_check(Claim claim, u64 x_max, std::size_t samples, double threshold,
                                  Weight&& weight, bool scale_by_log) {
    if (x_max == 0 || x_max > kMuTableCeiling)
        throw capacity_error("check: x_max must lie in [1, " + std::to_string(kMuTableCeiling) +
                             "]");
    BoundReport rep;
    rep.claim = claim;
    rep.threshold = threshold;
    const auto pts = geometric_samples(1, x_max, samples);
    std::size_t next = 0;
    CompensatedSum<long double> sum;
    bool within_one = true;
    stream_mu(x_max, [&](u64 n, int mu) {
        if (mu != 0) sum.add(static_cast<long double>(mu) * weight(n));
        if (next < pts.size() && pts[next] == n) {
            const double s = static_cast<double>(sum.value());
            if (std::abs(s) > 1.0) within_one = false;
            rep.add(n, scale_by_log ? std::abs(s) * std::log(static_cast<double>(n)) : std::abs(s));
            ++next;
        }
    });
    if (claim == Claim::mu_over_d) rep.side_checks.push_back({"|sum mu(d)/d| <= 1", within_one});
    rep.finish();
    return rep;
}

}  // namespace detail

/// Ratios |sum_{d<=x} mu(d)/d| * log x; also requires |sum| <= 1 everywhere.
inline BoundReport check_mu_over_d(u64 x_max, std::size_t samples = 0,
                                   double threshold = default_threshold(Claim::mu_over_d)) {
    return detail::weighted_mu_sum_check(
        Claim::mu_over_d, x_max, samples, threshold,
        [](u64 d) { return 1.0L / static_cast<long double>(d); }, true);
}

/// Ratios |sum_{d<=x} mu(d) log d / d|.
inline BoundReport check_mu_log_over_d(u64 x_max, std::size_t samples = 0,
                                       double threshold = default_threshold(Claim::mu_log_over_d)) {
    return detail::weighted_mu_sum_check(
        Claim::mu_log_over_d, x_max, samples, threshold,
        [](u64 d) {
            const auto v = static_cast<long double>(d);
            return std::log(v) / v;
        },
        false);
}

/// Ratios |M(x)|/sqrt(x) at sample points, plus exhaustive integer checks of
/// |M(n)| < sqrt(n) on 1 < n <= min(x_max, 1e4) and |M(n)| < sqrt(n)/2 on
/// 200 < n <= min(x_max, 5e6).
inline BoundReport check_mertens_order(u64 x_max, std::size_t samples = 0,
                                       double threshold = default_threshold(Claim::mertens_order)) {
    if (x_max == 0 || x_max > kMuTableCeiling)
        throw capacity_error("check_mertens_order: x_max must lie in [1, " +
                             std::to_string(kMuTableCeiling) + "]");
    BoundReport rep;
    rep.claim = Claim::mertens_order;
    rep.threshold = threshold;
    const auto pts = geometric_samples(1, x_max, samples);
    std::size_t next = 0;
    i64 m = 0;
    bool below_sqrt = true, below_half_sqrt = true;
    detail::stream_mu(x_max, [&](u64 n, int mu) {
        m += mu;
        const auto m2 = static_cast<u64>(m * m);
        if (n > 1 && n <= 10'000 && m2 >= n) below_sqrt = false;
        if (n > 200 && n <= 5'000'000 && 4 * m2 >= n) below_half_sqrt = false;
        if (next < pts.size() && pts[next] == n) {
            rep.add(n, std::abs(static_cast<double>(m)) / std::sqrt(static_cast<double>(n)));
            ++next;
        }
    });
    rep.side_checks.push_back({"|M(n)| < sqrt(n) for 1 < n <= min(x, 1e4)", below_sqrt});
    rep.side_checks.push_back({"|M(n)| < sqrt(n)/2 for 200 < n <= min(x, 5e6)", below_half_sqrt});
    rep.finish();
    return rep;
}

/// Ratios |psi(x) - x + sum_{n<=x} M(x/n)| / sqrt(x). The quotient sum is
/// computed, not assumed; every sample must give exactly 1.
inline BoundReport check_psi_identity(u64 x_max, std::size_t samples = 0,
                                      double threshold = default_threshold(Claim::psi_identity)) {
    if (x_max > kPsiCeiling) throw capacity_error("check_psi_identity: x_max above 1e10");
    BoundReport rep;
    rep.claim = Claim::psi_identity;
    rep.threshold = threshold;
    const auto pts = geometric_samples(1, x_max, samples);
    const MertensEngine engine(
        std::min(x_max, MertensEngine::recommended_dense_limit(x_max)));
    const auto psi = psi_many(pts);
    bool identity = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const i64 q = quotient_sum(pts[i], engine);
        if (q != 1) identity = false;
        const double x = static_cast<double>(pts[i]);
        rep.add(pts[i], std::abs(psi[i].psi - x + static_cast<double>(q)) / std::sqrt(x));
    }
    rep.side_checks.push_back({"quotient_sum(x) == 1", identity});
    rep.finish();
    return rep;
}

/// Ratios |psi(x) - x| / (x log^2 x) for x >= 1000, with the sharper
/// |psi(x) - x| / sqrt(x) < 3 on x <= 1e6 as a side check.
inline BoundReport check_psi_lemma(u64 x_max, std::size_t samples = 0,
                                   double threshold = default_threshold(Claim::psi_lemma)) {
    if (x_max < 1000) throw std::invalid_argument("check_psi_lemma: x_max must be >= 1000");
    if (x_max > kPsiCeiling) throw capacity_error("check_psi_lemma: x_max above 1e10");
    BoundReport rep;
    rep.claim = Claim::psi_lemma;
    rep.threshold = threshold;
    const auto pts = geometric_samples(1000, x_max, samples);
    const auto psi = psi_many(pts);
    bool sqrt_ok = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = static_cast<double>(pts[i]);
        const double err = std::abs(psi[i].psi - x);
        const double lx = std::log(x);
        rep.add(pts[i], err / (x * lx * lx));
        if (pts[i] <= 1'000'000 && err / std::sqrt(x) >= 3.0) sqrt_ok = false;
    }
    rep.side_checks.push_back({"|psi(x) - x| / sqrt(x) < 3 for x <= 1e6", sqrt_ok});
    rep.finish();
    return rep;
}

struct PiEstimateReport {
    BoundReport r1;  // |pi - psi/log x| log^2 x / x
    BoundReport r2;  // |pi - x/log x + Q(x)/log x| log^2 x / x, Q = quotient sum
    u64 asserted_lo = 10'000;
    u64 asserted_hi = 1'000'000'000;
    double r1_max = 2.0;
    double r2_lo = 0.9;
    double r2_hi = 1.5;
    bool pass = false;
};

/// Both pi(x) normalisations at sample points in [2, x_max]. Pass requires
/// r1, r2 in [0, r1_max] and r2 in [r2_lo, r2_hi] at every sample inside
/// [asserted_lo, asserted_hi]; smaller x are reported only.
inline PiEstimateReport check_pi_estimate(u64 x_max, std::size_t samples = 0,
                                          double threshold = default_threshold(Claim::pi_estimate)) {
    if (x_max < 2) throw std::invalid_argument("check_pi_estimate: x_max must be >= 2");
    if (x_max > kPsiCeiling) throw capacity_error("check_pi_estimate: x_max above 1e10");
    PiEstimateReport rep;
    rep.r1_max = threshold;
    rep.r1.claim = rep.r2.claim = Claim::pi_estimate;
    rep.r1.threshold = rep.r2.threshold = threshold;
    const auto pts = geometric_samples(2, x_max, samples);
    const auto psi = psi_many(pts);
    const MertensEngine engine(
        std::min(x_max, MertensEngine::recommended_dense_limit(x_max)));
    bool in_band = true, identity = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = static_cast<double>(pts[i]);
        const double lx = std::log(x);
        const double pi = static_cast<double>(psi[i].prime_count);
        const double q = static_cast<double>(quotient_sum(pts[i], engine));
        if (q != 1.0) identity = false;
        const double scale = lx * lx / x;
        const double r1 = std::abs(pi - psi[i].psi / lx) * scale;
        const double r2 = std::abs(pi - x / lx + q / lx) * scale;
        rep.r1.add(pts[i], r1);
        rep.r2.add(pts[i], r2);
        if (pts[i] >= rep.asserted_lo && pts[i] <= rep.asserted_hi) {
            if (r1 > rep.r1_max || r2 > rep.r1_max || r2 < rep.r2_lo || r2 > rep.r2_hi)
                in_band = false;
        }
    }
    rep.r2.side_checks.push_back({"quotient_sum(x) == 1", identity});
    rep.r1.pass = rep.r2.pass = in_band && identity;
    rep.pass = in_band && identity;
    return rep;
}

struct BoundFit {
    double alpha = 0.0;
    double beta = 0.0;
    u64 range_lo = 0;
    u64 range_hi = 0;
    std::vector<u64> sample_points;
    bool pass = false;
};

/// Smallest positive value reported for beta when the lower bound already
/// holds with beta -> 0.
inline constexpr double kBetaFloor = 1e-12;

/// Smallest alpha >= 0 and beta in (0, 1) such that
///   (1 - beta) x/log x <= pi(x) <= x/log x + alpha x log x
/// at every sampled x in [range_lo, range_hi].
inline BoundFit fit_bound_constants(u64 range_lo, u64 range_hi, std::size_t samples = 0) {
    if (range_lo < 2) throw std::invalid_argument("fit_bound_constants: range_lo must be >= 2");
    if (range_hi > kPsiCeiling) throw capacity_error("fit_bound_constants: range_hi above 1e10");
    if (range_lo >= range_hi)
        throw std::invalid_argument("fit_bound_constants: range must contain at least 2 samples");
    BoundFit fit;
    fit.range_lo = range_lo;
    fit.range_hi = range_hi;
    fit.sample_points = geometric_samples(range_lo, range_hi, samples);
    const auto counts = theta_at(fit.sample_points);

    auto upper_ok = [&](double alpha) {
        for (const auto& c : counts) {
            const double x = static_cast<double>(c.y), lx = std::log(x);
            if (static_cast<double>(c.pi) > x / lx + alpha * x * lx) return false;
        }
        return true;
    };
    auto lower_ok = [&](double beta) {
        for (const auto& c : counts) {
            const double x = static_cast<double>(c.y), lx = std::log(x);
            if ((1.0 - beta) * x / lx > static_cast<double>(c.pi)) return false;
        }
        return true;
    };

    double alpha = 0.0, beta = 0.0;
    for (const auto& c : counts) {
        const double x = static_cast<double>(c.y), lx = std::log(x);
        const double pi = static_cast<double>(c.pi);
        alpha = std::max(alpha, (pi - x / lx) / (x * lx));
        beta = std::max(beta, 1.0 - pi * lx / x);
    }
    // absorb rounding in the re-check
    while (!upper_ok(alpha)) alpha = std::nextafter(alpha, std::numeric_limits<double>::infinity());
    beta = std::max(beta, kBetaFloor);
    while (!lower_ok(beta)) beta = std::nextafter(beta, 1.0);
    fit.alpha = alpha;
    fit.beta = beta;
    fit.pass = upper_ok(alpha) && lower_ok(beta) && beta < 1.0;
    return fit;
}

}  // namespace arith
