#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "arith/chebyshev.hpp"
#include "arith/log_magnitude.hpp"
#include "arith/sieve.hpp"

namespace arith {

/// 50-digit decimal float without expression templates.
using Dec50 = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>,
                                            boost::multiprecision::et_off>;

inline constexpr u64 kGalwayCounterexample = 38'358'837'677;  // largest prime counterexample below 1e11
inline constexpr u64 kInequalityCeiling = 100'000'000'000;

enum class GapSign : int { negative = -1, zero = 0, positive = 1, indeterminate = 2 };

inline const char* to_string(GapSign s) {
    switch (s) {
        case GapSign::negative: return "-1";
        case GapSign::zero: return "0";
        case GapSign::positive: return "1";
        case GapSign::indeterminate: return "ind";
    }
    return "?";
}

/// floor(x / e^n). Long double first; when the quotient sits within 1e-6 of
/// an integer the division is redone with 50 significant digits.
inline u64 floor_div_exp(u64 x, unsigned n) {
    const long double q = static_cast<long double>(x) / std::exp(static_cast<long double>(n));
    const long double f = std::floor(q);
    if (q - f > 1e-6L && f + 1.0L - q > 1e-6L) return static_cast<u64>(f);
    const Dec50 exact = floor(Dec50(x) / exp(Dec50(n)));
    return exact.convert_to<u64>();
}

/// One evaluation of G(x) = pi(x)^2 - (e x / log x) pi(floor(x/e)).
struct InequalityReport {
    u64 x = 0;
    u64 pi_x = 0;
    u64 x_over_e = 0;  // floor(x/e)
    u64 pi_x_over_e = 0;
    long double lhs = 0;  // pi(x)^2, exact
    long double rhs = 0;
    long double g = 0;    // lhs - rhs
    GapSign g_sign = GapSign::indeterminate;
    double margin_log10 = 0;  // log10 |lhs - rhs|

    bool holds() const { return g_sign == GapSign::negative; }
};

namespace detail {

template <class Real>
Real ramanujan_rhs(u64 x, u64 pi_x_over_e) {
    using std::exp;
    using std::log;
    const Real e = exp(Real(1));
    return e * Real(x) / log(Real(x)) * Real(pi_x_over_e);
}

// Sign of pi_x^2 - rhs with a relative error budget of `ulps` units of Real.
template <class Real>
GapSign gap_sign(u64 pi_x, u64 pi_x_over_e, u64 x, int ulps) {
    using std::abs;
    const Real rhs = ramanujan_rhs<Real>(x, pi_x_over_e);
    const Real lhs = Real(pi_x) * Real(pi_x);
    const Real diff = lhs - rhs;
    const Real bound = Real(ulps) * std::numeric_limits<Real>::epsilon() * rhs;
    if (abs(diff) <= bound) return GapSign::indeterminate;
    return diff < Real(0) ? GapSign::negative : GapSign::positive;
}

}  // namespace detail

/// Builds the report from exact prime counts. Valid for x >= 2.
inline InequalityReport evaluate_gap(u64 x, u64 pi_x, u64 x_over_e, u64 pi_x_over_e) {
    InequalityReport r;
    r.x = x;
    r.pi_x = pi_x;
    r.x_over_e = x_over_e;
    r.pi_x_over_e = pi_x_over_e;
    r.lhs = static_cast<long double>(pi_x * pi_x);
    r.rhs = detail::ramanujan_rhs<long double>(x, pi_x_over_e);
    r.g = r.lhs - r.rhs;
    if (pi_x_over_e == 0) {
        r.g_sign = pi_x == 0 ? GapSign::zero : GapSign::positive;
    } else {
        r.g_sign = detail::gap_sign<long double>(pi_x, pi_x_over_e, x, 16);
        if (r.g_sign == GapSign::indeterminate)
            r.g_sign = detail::gap_sign<Dec50>(pi_x, pi_x_over_e, x, 1000);
    }
    r.margin_log10 = r.g == 0 ? -std::numeric_limits<double>::infinity()
                              : static_cast<double>(std::log10(std::abs(r.g)));
    return r;
}

/// Exact evaluation of G at integer x in [3, 1e11].
inline InequalityReport eval_inequality(u64 x, const PrimeCountEngine& engine) {
    if (x < 3) throw std::domain_error("eval_inequality: x must be >= 3");
    if (x > kInequalityCeiling)
        throw capacity_error("eval_inequality: x above " + std::to_string(kInequalityCeiling));
    const u64 xe = floor_div_exp(x, 1);
    return evaluate_gap(x, engine.pi(x), xe, engine.pi(xe));
}

struct ScanSummary {
    u64 range_lo = 0;
    u64 range_hi = 0;
    std::string step_rule;
    u64 holds_count = 0;
    u64 fails_count = 0;
    u64 indeterminate_count = 0;
    std::vector<u64> counterexamples;  // G(x) >= 0

    u64 evaluated() const { return holds_count + fails_count + indeterminate_count; }

    void record(const InequalityReport& r) {
        switch (r.g_sign) {
            case GapSign::negative: ++holds_count; break;
            case GapSign::indeterminate: ++indeterminate_count; break;
            default:
                ++fails_count;
                counterexamples.push_back(r.x);
        }
    }

    // Appends a later, disjoint part of the same scan.
    void merge(const ScanSummary& later) {
        holds_count += later.holds_count;
        fails_count += later.fails_count;
        indeterminate_count += later.indeterminate_count;
        counterexamples.insert(counterexamples.end(), later.counterexamples.begin(),
                               later.counterexamples.end());
    }

    friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

inline std::string step_rule_name(bool primes_only) {
    return primes_only ? "primes" : "all-integers";
}

struct ScanOptions {
    unsigned threads = 1;
    std::size_t segment_length = kDefaultSegmentLength;
    // Called once per evaluated point, in ascending x, on the calling thread.
    std::function<void(const InequalityReport&)> on_row;
};

namespace detail {

inline void scan_block(u64 lo, u64 hi, bool primes_only, const PrimeCountEngine& engine,
                       std::size_t segment_length, ScanSummary& summary,
                       std::vector<InequalityReport>* rows) {
    const PrimeCursor at_x(lo, hi, engine, segment_length);
    const u64 e_lo = floor_div_exp(lo, 1), e_hi = floor_div_exp(hi, 1);
    const PrimeCursor at_xe(std::max<u64>(e_lo, 1), std::max<u64>(e_hi, 1), engine,
                            segment_length);
    auto visit = [&](u64 x) {
        const u64 xe = floor_div_exp(x, 1);
        const auto r = evaluate_gap(x, at_x.pi(x), xe, at_xe.pi(xe));
        summary.record(r);
        if (rows) rows->push_back(r);
    };
    if (primes_only) {
        for (const u64 p : at_x.primes()) visit(p);
    } else {
        for (u64 x = lo;; ++x) {
            visit(x);
            if (x == hi) break;
        }
    }
}

}  // namespace detail

/// Evaluates G over [range_lo, range_hi] (every integer, or only the primes)
/// and lists every x with G(x) >= 0. Sub-ranges run on separate threads and
/// are merged in range order, so the result does not depend on `threads`.
inline ScanSummary scan_range(u64 range_lo, u64 range_hi, bool primes_only,
                              const PrimeCountEngine& engine, const ScanOptions& opts = {}) {
    if (range_lo > range_hi)
        throw std::invalid_argument("scan_range: empty range [" + std::to_string(range_lo) + ", " +
                                    std::to_string(range_hi) + "]");
    if (range_lo < 2) throw std::domain_error("scan_range: range_lo must be >= 2");
    if (range_hi > kInequalityCeiling)
        throw capacity_error("scan_range: range_hi above " + std::to_string(kInequalityCeiling));

    const u64 width = range_hi - range_lo + 1;
    const u64 parts = std::clamp<u64>(opts.threads, 1, std::max<u64>(1, width / 1024));
    std::vector<ScanSummary> partial(parts);
    std::vector<std::vector<InequalityReport>> rows(parts);
    auto run = [&](u64 i) {
        const u64 lo = range_lo + width * i / parts;
        const u64 hi = range_lo + width * (i + 1) / parts - 1;
        detail::scan_block(lo, hi, primes_only, engine, opts.segment_length, partial[i],
                           opts.on_row ? &rows[i] : nullptr);
    };
    if (parts == 1) {
        run(0);
    } else {
        std::vector<std::jthread> workers;
        for (u64 i = 0; i < parts; ++i) workers.emplace_back(run, i);
    }

    ScanSummary out;
    out.range_lo = range_lo;
    out.range_hi = range_hi;
    out.step_rule = step_rule_name(primes_only);
    for (u64 i = 0; i < parts; ++i) {
        out.merge(partial[i]);
        if (opts.on_row)
            for (const auto& r : rows[i]) opts.on_row(r);
    }
    return out;
}

struct MonotonicityViolation {
    u64 x = 0;
    u64 x_next = 0;
    long double margin = 0;  // G(x_next) - G(x) > 0
};

struct MonotonicityReport {
    u64 range_lo = 0;
    u64 range_hi = 0;
    u64 step = 1;
    u64 points = 0;
    std::vector<MonotonicityViolation> violations;
};

namespace detail {

// G(b) - G(a): the integer part pi(b)^2 - pi(a)^2 is exact.
template <class Real>
Real gap_difference(const InequalityReport& a, const InequalityReport& b) {
    const i64 squares = static_cast<i64>(b.pi_x * b.pi_x) - static_cast<i64>(a.pi_x * a.pi_x);
    return Real(squares) - (ramanujan_rhs<Real>(b.x, b.pi_x_over_e) -
                            ramanujan_rhs<Real>(a.x, a.pi_x_over_e));
}

}  // namespace detail

/// Evaluates G at range_lo, range_lo + step, ... <= range_hi and lists every
/// adjacent pair where G increases. Emptiness is not asserted.
inline MonotonicityReport monotonicity_probe(u64 range_lo, u64 range_hi, u64 step,
                                             const PrimeCountEngine& engine) {
    if (step == 0) throw std::invalid_argument("monotonicity_probe: step must be >= 1");
    if (range_lo < 3) throw std::domain_error("monotonicity_probe: range_lo must be >= 3");
    if (range_lo > range_hi) throw std::invalid_argument("monotonicity_probe: empty range");
    MonotonicityReport rep;
    rep.range_lo = range_lo;
    rep.range_hi = range_hi;
    rep.step = step;

    const PrimeCursor at_x(range_lo, range_hi, engine);
    const PrimeCursor at_xe(floor_div_exp(range_lo, 1), floor_div_exp(range_hi, 1), engine);
    auto eval = [&](u64 x) {
        const u64 xe = floor_div_exp(x, 1);
        return evaluate_gap(x, at_x.pi(x), xe, at_xe.pi(xe));
    };

    InequalityReport prev = eval(range_lo);
    rep.points = 1;
    for (u64 x = range_lo + step; x <= range_hi && x > prev.x; x += step) {
        const InequalityReport cur = eval(x);
        ++rep.points;
        long double margin = detail::gap_difference<long double>(prev, cur);
        const long double bound =
            64 * std::numeric_limits<long double>::epsilon() * std::max(prev.rhs, cur.rhs);
        if (std::abs(margin) <= bound)
            margin = static_cast<long double>(detail::gap_difference<Dec50>(prev, cur));
        if (margin > 0) rep.violations.push_back({prev.x, cur.x, margin});
        prev = cur;
    }
    return rep;
}

/// Outcome of a log-space comparison between two sides of an inequality.
struct LogComparison {
    int sign = 0;           // sign of the difference named by the operation; 0 if undecided
    bool determinate = false;
    bool holds = false;     // the stated inequality holds strictly
    double ln_lhs = 0;
    double ln_rhs = 0;
    double error_bound = 0;  // absolute, in ln units
    std::string note;
};

namespace detail {

template <class Real>
struct LogSides {
    Real ln_lhs, ln_rhs, error;
};

template <class Real>
LogSides<Real> power_sides(u64 x, unsigned n, u64 pi_x, u64 pi_scaled) {
    using std::abs;
    using std::log;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real lx = log(Real(x));
    const Real llx = log(lx);
    const Real two_n = Real(u64{1} << n);
    const Real ln_pi_x = log(Real(pi_x));
    const Real ln_pi_scaled = log(Real(pi_scaled));

    const Real ln_lhs = two_n * ln_pi_x;
    Real product_log = 0;  // sum_k 2^{n-k} log(1 - (k-1)/log x)
    Real magnitude = 0;
    for (unsigned k = 1; k <= n; ++k) {
        const Real term = Real(u64{1} << (n - k)) * log(Real(1) - Real(k - 1) / lx);
        product_log += term;
        magnitude += abs(term);
    }
    const Real ln_rhs = Real(n) - product_log + (two_n - Real(1)) * (lx - llx) + ln_pi_scaled;
    magnitude += abs(ln_lhs) + Real(n) + two_n * (lx + abs(llx)) + abs(ln_pi_scaled);
    return {ln_lhs, ln_rhs, Real(64) * eps * magnitude};
}

template <class Real>
LogSides<Real> cubic_sides(u64 x, unsigned n, u64 pi_x, u64 pi_e, u64 pi_e2) {
    using std::abs;
    using std::log;
    using std::pow;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real lx = log(Real(x));
    const Real llx = log(lx);
    const Real ln3 = log(Real(3));
    const Real t = pow(Real(3), Real(n));

    const Real ln_a = ln3 + Real(1) + lx - llx + (t - Real(1)) * log(Real(pi_e));
    const Real ln_b = t * log(Real(pi_x));
    const Real ln_c = ln3 + Real(2) + lx - Real(2) * llx + (t - Real(2)) * log(Real(pi_e2));
    using LM = BasicLogMagnitude<Real>;
    const LM rhs = LM::from_log(1, ln_b) + LM::from_log(1, ln_c);
    const Real magnitude = abs(ln_a) + abs(ln_b) + abs(ln_c) + Real(4) * lx;
    return {ln_a, rhs.ln_mag(), Real(64) * eps * magnitude};
}

// Decides sign(rhs - lhs) in long double, falling back to 50 digits.
template <class Sides>
LogComparison decide(Sides&& sides) {
    LogComparison out;
    const auto ld = sides(static_cast<long double*>(nullptr));
    long double gap = ld.ln_rhs - ld.ln_lhs;
    out.ln_lhs = static_cast<double>(ld.ln_lhs);
    out.ln_rhs = static_cast<double>(ld.ln_rhs);
    out.error_bound = static_cast<double>(ld.error);
    if (std::abs(gap) > ld.error) {
        out.sign = gap > 0 ? 1 : -1;
        out.determinate = true;
        return out;
    }
    const auto hp = sides(static_cast<Dec50*>(nullptr));
    const Dec50 hp_gap = hp.ln_rhs - hp.ln_lhs;
    out.error_bound = hp.error.template convert_to<double>();
    if (abs(hp_gap) > hp.error) {
        out.sign = hp_gap > 0 ? 1 : -1;
        out.determinate = true;
    }
    return out;
}

}  // namespace detail

/// pi(x)^(2^n) < e^n / prod_{k=1}^{n} (1 - (k-1)/log x)^(2^(n-k)) * (x/log x)^(2^n - 1)
///               * pi(x / e^n)
/// evaluated in log space. `sign` is sign(LHS - RHS); the inequality holds
/// when it is -1. n = 1 is the two-term inequality evaluated by
/// eval_inequality.
inline LogComparison hassani_power_inequality(u64 x, unsigned n, const PrimeCountEngine& engine) {
    if (n < 1 || n > 62) throw std::domain_error("hassani_power_inequality: n must lie in [1, 62]");
    if (x > kInequalityCeiling)
        throw capacity_error("hassani_power_inequality: x above " +
                             std::to_string(kInequalityCeiling));
    if (x < 3 || !(std::log(static_cast<long double>(x)) > static_cast<long double>(n - 1)))
        throw std::domain_error("hassani_power_inequality: requires log x > n - 1");
    const u64 scaled = floor_div_exp(x, n);
    if (scaled < 2) throw std::domain_error("hassani_power_inequality: requires floor(x/e^n) >= 2");
    const u64 pi_x = engine.pi(x), pi_scaled = engine.pi(scaled);

    auto out = detail::decide([&](auto* tag) {
        using Real = std::remove_pointer_t<decltype(tag)>;
        return detail::power_sides<Real>(x, n, pi_x, pi_scaled);
    });
    out.sign = -out.sign;  // report sign(LHS - RHS)
    out.holds = out.determinate && out.sign < 0;
    return out;
}

/// 3ex/log x * pi(x/e)^(3^n - 1) < pi(x)^(3^n) + 3e^2 x/(log x)^2 * pi(x/e^2)^(3^n - 2)
/// evaluated in log space. `sign` is sign(RHS - LHS); the inequality holds
/// when it is +1. For n = 1 the direction is claimed to reverse, so the
/// result is tagged rather than judged.
inline LogComparison hassani_cubic_inequality(u64 x, unsigned n, const PrimeCountEngine& engine) {
    if (n < 1 || n > 30) throw std::domain_error("hassani_cubic_inequality: n must lie in [1, 30]");
    if (x > kInequalityCeiling)
        throw capacity_error("hassani_cubic_inequality: x above " +
                             std::to_string(kInequalityCeiling));
    const u64 xe2 = x < 3 ? 0 : floor_div_exp(x, 2);
    if (xe2 < 2) throw std::domain_error("hassani_cubic_inequality: requires x >= 2 e^2");
    const u64 pi_x = engine.pi(x), pi_e = engine.pi(floor_div_exp(x, 1)), pi_e2 = engine.pi(xe2);

    auto out = detail::decide([&](auto* tag) {
        using Real = std::remove_pointer_t<decltype(tag)>;
        return detail::cubic_sides<Real>(x, n, pi_x, pi_e, pi_e2);
    });
    out.holds = out.determinate && out.sign > 0;
    if (n == 1) out.note = "n=1: reversed-direction case, reported without judgment";
    return out;
}

}  // namespace arith
