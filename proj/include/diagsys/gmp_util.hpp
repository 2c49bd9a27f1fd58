#pragma once

// Conversions between GMP types and the 64/128-bit integers used in the hot
// paths, plus decimal formatting for exact rationals.

#include <gmpxx.h>

#include "common.hpp"

namespace diagsys {

inline mpz_class mpz_from_i64(i64 v) { return mpz_class(long(v)); }

inline mpz_class mpz_from_i128(i128 v) {
    bool neg = v < 0;
    u128 m = neg ? u128(-(v + 1)) + 1 : u128(v);
    mpz_class out((unsigned long)(m >> 64));
    out <<= 64;
    out += mpz_class((unsigned long)u64(m));
    return neg ? mpz_class(-out) : out;
}

inline i128 i128_from_mpz(const mpz_class& v) {
    bool neg = v < 0;
    mpz_class m = abs(v);
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > 127) throw overflow_error("mpz exceeds 128 bits");
    mpz_class hi = m >> 64;
    mpz_class lo = m - (hi << 64);
    u128 r = (u128(hi.get_ui()) << 64) | u128(lo.get_ui());
    // get_ui truncates to unsigned long; both halves fit by construction
    i128 out = i128(r);
    return neg ? -out : out;
}

// Fixed-point decimal rendering of an exact rational (round-toward-zero).
inline std::string mpq_to_decimal(const mpq_class& q, int digits = 40) {
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class ip = num / den;
    mpz_class rem = num - ip * den;
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            mpz_class d = rem / den;
            out += char('0' + d.get_si());
            rem -= d * den;
        }
    }
    return out;
}

inline double mpq_to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace diagsys
