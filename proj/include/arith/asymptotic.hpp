#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith/log_magnitude.hpp"

namespace arith {

enum class GFormula {
    // -x^2 / ((log x)^2 (log x - 1)): the main term left after the x^2/log^2 x
    // and x^2/(log x (log x - 1)) contributions cancel.
    leading,
    // -x^2 / ((log x)^2 (log x - 1))^2: reproduces the published table of
    // G(e^k) to within 0.01 in log10 magnitude. Provided as a reference
    // generator; it is not derived from the expansion.
    table_ref,
};

/// Large-x approximation of G(x) = pi(x)^2 - (e x / log x) pi(x / e), as a
/// log-magnitude with sign -1. log_x must exceed 1.
inline LogMagnitude g_asymptotic(double log_x, GFormula formula) {
    if (!(log_x > 1.0))
        throw std::domain_error("g_asymptotic: log_x must be > 1, got " + std::to_string(log_x));
    const double denom = 2.0 * std::log(log_x) + std::log(log_x - 1.0);
    const double power = formula == GFormula::leading ? 1.0 : 2.0;
    return LogMagnitude::from_log(-1, 2.0 * log_x - power * denom);
}

struct ScientificParts {
    int sign = 0;
    double mantissa = 0.0;  // in [1, 10), rounded to `digits` decimals
    long exponent = 0;
};

/// Splits sign * 10^log10_abs into mantissa/exponent with the mantissa
/// rounded to `digits` decimals.
inline ScientificParts scientific_parts(int sign, double log10_abs, int digits = 7) {
    ScientificParts p;
    p.sign = sign;
    if (sign == 0) return p;
    const double scale = std::pow(10.0, digits);
    p.exponent = static_cast<long>(std::floor(log10_abs));
    p.mantissa = std::round(std::pow(10.0, log10_abs - static_cast<double>(p.exponent)) * scale) /
                 scale;
    if (p.mantissa >= 10.0) {
        p.mantissa /= 10.0;
        ++p.exponent;
    }
    return p;
}

/// "-d.ddddddde+EEE"
inline std::string format_scientific(int sign, double log10_abs, int digits = 7) {
    if (sign == 0) return "0";
    const auto p = scientific_parts(sign, log10_abs, digits);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.*fe%+04ld", sign < 0 ? "-" : "", digits, p.mantissa,
                  p.exponent);
    return buf;
}

/// Inverse of format_scientific: (sign, log10|value|).
inline std::pair<int, double> parse_scientific(const std::string& s) {
    const auto epos = s.find_first_of("eE");
    if (epos == std::string::npos) throw std::invalid_argument("parse_scientific: no exponent");
    const double mantissa = std::stod(s.substr(0, epos));
    const long exponent = std::stol(s.substr(epos + 1));
    if (mantissa == 0.0) return {0, 0.0};
    return {mantissa < 0 ? -1 : 1, std::log10(std::abs(mantissa)) + static_cast<double>(exponent)};
}

struct Table1Row {
    int k = 0;  // x = e^k
    double g_log10 = 0.0;
    int g_sign = 0;
    std::string formatted;
};

inline Table1Row make_table_row(int k, GFormula formula) {
    const auto g = g_asymptotic(static_cast<double>(k), formula);
    Table1Row row;
    row.k = k;
    row.g_sign = g.sign();
    row.g_log10 = g.log10_abs();
    row.formatted = format_scientific(row.g_sign, row.g_log10);
    return row;
}

/// Rows for k = 547, 647, ..., 3247.
inline std::vector<Table1Row> emit_table1(GFormula formula = GFormula::table_ref) {
    std::vector<Table1Row> rows;
    for (int k = 547; k <= 3247; k += 100) rows.push_back(make_table_row(k, formula));
    return rows;
}

struct FigurePoint {
    double log_x = 0.0;
    double log_neg_g = 0.0;  // ln(-G(e^log_x))
};

inline std::vector<FigurePoint> emit_figure1(double k_lo, double k_hi, double step,
                                             GFormula formula = GFormula::table_ref) {
    if (!(k_lo > 1.0)) throw std::domain_error("emit_figure1: k_lo must be > 1");
    if (!(step > 0.0)) throw std::invalid_argument("emit_figure1: step must be > 0");
    if (k_hi < k_lo) throw std::invalid_argument("emit_figure1: k_hi < k_lo");
    std::vector<FigurePoint> out;
    const double slack = step * 1e-9;
    for (long i = 0;; ++i) {
        const double k = k_lo + static_cast<double>(i) * step;
        if (k > k_hi + slack) break;
        const auto g = g_asymptotic(k, formula);
        out.push_back({k, g.ln_mag()});
    }
    return out;
}

/// Ordinary least-squares slope of log_neg_g against log_x.
inline double least_squares_slope(std::span<const FigurePoint> pts) {
    if (pts.size() < 2) throw std::invalid_argument("least_squares_slope: need >= 2 points");
    double mx = 0, my = 0;
    for (const auto& p : pts) {
        mx += p.log_x;
        my += p.log_neg_g;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (const auto& p : pts) {
        sxy += (p.log_x - mx) * (p.log_neg_g - my);
        sxx += (p.log_x - mx) * (p.log_x - mx);
    }
    return sxy / sxx;
}

}  // namespace arith
