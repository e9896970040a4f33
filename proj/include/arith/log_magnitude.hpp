#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace arith {

/// Signed real stored as (sign, ln|value|). Products add logarithms and sums
/// use log-sum-exp, so values like 10^2799 stay representable in a double.
/// Zero has sign 0 and ln_mag = -infinity.
template <class Real>
class BasicLogMagnitude {
public:
    BasicLogMagnitude() = default;

    static BasicLogMagnitude zero() { return {}; }
    static BasicLogMagnitude from_log(int sign, Real ln_mag) {
        BasicLogMagnitude r;
        if (sign == 0) return r;
        r.sign_ = sign > 0 ? 1 : -1;
        r.ln_mag_ = ln_mag;
        return r;
    }
    static BasicLogMagnitude from_value(Real v) {
        using std::abs;
        using std::log;
        if (v == Real(0)) return zero();
        return from_log(v > Real(0) ? 1 : -1, log(abs(v)));
    }

    int sign() const { return sign_; }
    Real ln_mag() const { return ln_mag_; }
    bool is_zero() const { return sign_ == 0; }

    Real log10_abs() const {
        using std::log;
        return ln_mag_ / log(Real(10));
    }

    BasicLogMagnitude operator-() const { return from_log(-sign_, ln_mag_); }

    friend BasicLogMagnitude operator*(const BasicLogMagnitude& a, const BasicLogMagnitude& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log(a.sign_ * b.sign_, a.ln_mag_ + b.ln_mag_);
    }

    friend BasicLogMagnitude operator/(const BasicLogMagnitude& a, const BasicLogMagnitude& b) {
        if (a.is_zero()) return zero();
        return from_log(a.sign_ * b.sign_, a.ln_mag_ - b.ln_mag_);
    }

    friend BasicLogMagnitude operator+(const BasicLogMagnitude& a, const BasicLogMagnitude& b) {
        using std::exp;
        using std::log1p;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const bool a_big = a.ln_mag_ >= b.ln_mag_;
        const auto& hi = a_big ? a : b;
        const auto& lo = a_big ? b : a;
        const Real delta = lo.ln_mag_ - hi.ln_mag_;  // <= 0
        if (hi.sign_ == lo.sign_) return from_log(hi.sign_, hi.ln_mag_ + log1p(exp(delta)));
        if (delta == Real(0)) return zero();
        return from_log(hi.sign_, hi.ln_mag_ + log1p(-exp(delta)));
    }

    friend BasicLogMagnitude operator-(const BasicLogMagnitude& a, const BasicLogMagnitude& b) {
        return a + (-b);
    }

    BasicLogMagnitude pow(Real exponent) const {
        if (is_zero()) return zero();
        return from_log(sign_ > 0 ? 1 : (exponent_is_odd(exponent) ? -1 : 1), ln_mag_ * exponent);
    }

    friend bool operator==(const BasicLogMagnitude& a, const BasicLogMagnitude& b) {
        return a.sign_ == b.sign_ && (a.sign_ == 0 || a.ln_mag_ == b.ln_mag_);
    }

    friend std::ostream& operator<<(std::ostream& os, const BasicLogMagnitude& v) {
        if (v.is_zero()) return os << "0";
        return os << (v.sign_ < 0 ? "-" : "+") << "exp(" << v.ln_mag_ << ")";
    }

private:
    static bool exponent_is_odd(Real e) {
        using std::fmod;
        return fmod(e, Real(2)) == Real(1);
    }

    int sign_ = 0;
    Real ln_mag_ = -std::numeric_limits<Real>::infinity();
};

using LogMagnitude = BasicLogMagnitude<double>;

inline LogMagnitude lm_mul(const LogMagnitude& a, const LogMagnitude& b) { return a * b; }
inline LogMagnitude lm_add(const LogMagnitude& a, const LogMagnitude& b) { return a + b; }

}  // namespace arith
