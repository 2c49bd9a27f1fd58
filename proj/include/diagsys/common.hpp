#pragma once

// Shared utilities: checked 128-bit arithmetic, exact fractional parts of
// double*integer products, small prime helpers, and the library's error
// taxonomy (the CLI maps these onto exit codes).

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace diagsys {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;
using u128 = unsigned __int128;

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 m = neg ? u128(-(v + 1)) + 1 : u128(v);
    std::string s;
    while (m > 0) {
        s.push_back(char('0' + int(m % 10)));
        m /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("bad integer: " + s);
    i128 v = 0;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') throw std::invalid_argument("bad integer: " + s);
        if (__builtin_mul_overflow(v, i128(10), &v) ||
            __builtin_add_overflow(v, i128(s[pos] - '0'), &v))
            throw overflow_error("integer out of 128-bit range: " + s);
    }
    return neg ? -v : v;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("128-bit addition overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("128-bit multiplication overflow");
    return r;
}

inline i128 checked_pow(i128 base, int exp) {
    i128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

// Unchecked small power; caller guarantees the result fits i64.
inline i64 ipow64(i64 base, int exp) {
    i64 r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

inline i64 power_mod(i64 base, i64 exp, i64 mod) {
    base %= mod;
    if (base < 0) base += mod;
    u128 r = 1, b = u128(base);
    while (exp > 0) {
        if (exp & 1) r = r * b % u128(mod);
        b = b * b % u128(mod);
        exp >>= 1;
    }
    return i64(r);
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    std::vector<bool> comp(size_t(std::max<i64>(n + 1, 2)), false);
    for (i64 p = 2; p <= n; ++p) {
        if (comp[size_t(p)]) continue;
        out.push_back(p);
        for (i64 m = p * p; m <= n; m += p) comp[size_t(m)] = true;
    }
    return out;
}

inline double binomial_approx(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// Exact-to-rounding fractional part of g*n for g in [0,1) and integer n.
// The double g is a dyadic rational m*2^-s; (m*n mod 2^s)*2^-s is then the
// exact fractional part.  Masking works because u128 products wrap mod 2^128,
// which preserves the low s <= 127 bits.
inline double frac_times(double g, u128 n) {
    if (g == 0.0 || n == 0) return 0.0;
    int e;
    double m = std::frexp(g, &e);  // g = m * 2^e, m in [0.5, 1)
    i64 mi = i64(std::ldexp(m, 53));
    int s = 53 - e;
    if (s <= 0) return 0.0;  // g*n is an integer multiple of n
    if (s <= 127) {
        u128 mask = (s == 127) ? (~u128(0) >> 1) : ((u128(1) << s) - 1);
        u128 r = (u128(mi) * n) & mask;
        return std::ldexp(double(r), -s);
    }
    long double prod = (long double)g * (long double)n;
    long double f = prod - std::floor(prod);
    return double(f);
}

// Fractional part in [0,1) of gamma*n for arbitrary-sign double gamma.
inline double frac_phase(double gamma, u128 n) {
    double g = gamma - std::floor(gamma);
    double f = frac_times(g, n);
    return f;
}


namespace detail {
// lexicographic m-combination of {0..n-1}; returns false after the last
inline bool next_combination(std::vector<int>& c, int n) {
    int m = int(c.size());
    for (int i = m - 1; i >= 0; --i) {
        if (c[size_t(i)] < n - m + i) {
            ++c[size_t(i)];
            for (int j = i + 1; j < m; ++j) c[size_t(j)] = c[size_t(j - 1)] + 1;
            return true;
        }
    }
    return false;
}
}  // namespace detail

}  // namespace diagsys
