#pragma once

// Independent reference implementations used only by the tests. Nothing here
// shares code with the library paths being checked.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>,
                                          boost::multiprecision::et_off>;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int mu(u64 n) {
    int sign = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

// p if n = p^m for a prime p and m >= 1, else 0.
inline u64 prime_power_base(u64 n) {
    if (n < 2) return 0;
    u64 p = n;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

// pi(0..limit) from a byte-per-number sieve.
inline std::vector<u64> pi_table(u64 limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<u64> pi(limit + 1, 0);
    u64 count = 0;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            ++count;
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
        }
        pi[i] = count;
    }
    return pi;
}

inline std::vector<i64> mertens_table(u64 limit) {
    std::vector<i64> m(limit + 1, 0);
    for (u64 n = 1; n <= limit; ++n) m[n] = m[n - 1] + mu(n);
    return m;
}

inline Big e() { return exp(Big(1)); }

inline u64 floor_div_e(u64 x, unsigned n = 1) {
    return static_cast<u64>(floor(Big(x) / exp(Big(n))).convert_to<unsigned long long>());
}

// G(x) = pi(x)^2 - e x / log x * pi(floor(x/e)), 60 digits.
inline Big gap(u64 x, const std::vector<u64>& pi) {
    const Big px(pi[x]);
    return px * px - e() * Big(x) / log(Big(x)) * Big(pi[floor_div_e(x)]);
}

// pi(x)^(2^n) - e^n / prod_k (1 - (k-1)/log x)^(2^(n-k)) * (x/log x)^(2^n - 1) * pi(x/e^n),
// computed directly without logarithms.
inline Big power_gap(u64 x, unsigned n, u64 pi_x, u64 pi_scaled) {
    const Big lx = log(Big(x));
    const u64 t = u64{1} << n;
    Big prod = 1;
    for (unsigned k = 1; k <= n; ++k) prod *= pow(1 - Big(k - 1) / lx, Big(u64{1} << (n - k)));
    const Big rhs = exp(Big(n)) / prod * pow(Big(x) / lx, Big(t - 1)) * Big(pi_scaled);
    return pow(Big(pi_x), Big(t)) - rhs;
}

// pi(x)^(3^n) + 3e^2 x/log^2 x * pi(x/e^2)^(3^n-2) - 3ex/log x * pi(x/e)^(3^n-1).
inline Big cubic_gap(u64 x, unsigned n, u64 pi_x, u64 pi_e, u64 pi_e2) {
    const Big lx = log(Big(x));
    const Big t = pow(Big(3), Big(n));
    const Big a = 3 * e() * Big(x) / lx * pow(Big(pi_e), t - 1);
    const Big b = pow(Big(pi_x), t);
    const Big c = 3 * exp(Big(2)) * Big(x) / (lx * lx) * pow(Big(pi_e2), t - 2);
    return b + c - a;
}

}  // namespace oracle
