#pragma once

// Exponential sums: f(gamma) = sum_{x in A} e(gamma_1 x^{k_1} + ...), the
// coordinate transform gamma_{j,l,n} = sum_{i in I_{l,n}} c_ij alpha_i, the
// complete sums S(q,a) over a full period, and the scan of |S(q,a)| against
// the (q,a)^{1/k} q^{1-1/k} envelope.
//
// Phases gamma * x^k are reduced mod 1 exactly (dyadic decomposition of the
// double), so periodicity in integer shifts of gamma holds to rounding.

#include <complex>
#include <numbers>

#include "profile.hpp"
#include "ranges.hpp"

namespace diagsys {

using cd = std::complex<double>;

inline cd unit_phase(double frac) {  // e(frac) = exp(2 pi i frac)
    double t = 2.0 * std::numbers::pi * frac;
    return {std::cos(t), std::sin(t)};
}

// One phase-coefficient vector per variable, one entry per distinct exponent.
struct GammaCoefficients {
    std::vector<int> exponents;                      // profile order: level asc, exponent asc
    std::vector<std::vector<double>> per_variable;   // [j][idx]
};

// alpha is indexed by the equations of sys (its stored, degree-sorted order).
inline GammaCoefficients gamma_transform(const AdditiveSystem& sys, const DegreeProfile& p,
                                         const std::vector<double>& alpha) {
    if (int(alpha.size()) != sys.eq_count)
        throw std::invalid_argument("alpha must have one entry per equation");
    GammaCoefficients g;
    for (int l = 0; l < p.level_count; ++l)
        for (int e : p.exponents[size_t(l)]) g.exponents.push_back(e);
    g.per_variable.assign(size_t(sys.var_count), std::vector<double>(g.exponents.size(), 0.0));
    size_t idx = 0;
    for (int l = 0; l < p.level_count; ++l)
        for (int n = 0; n < p.distinct_counts[size_t(l)]; ++n, ++idx) {
            auto [b, e] = p.rows_of(l, n);
            for (i64 pr = b; pr < e; ++pr) {
                int i = p.row_permutation[size_t(pr)];
                for (int j = 0; j < sys.var_count; ++j)
                    g.per_variable[size_t(j)][idx] +=
                        double(sys.coeffs[size_t(i)][size_t(j)]) * alpha[size_t(i)];
            }
        }
    return g;
}

inline GammaCoefficients gamma_transform(const AdditiveSystem& sys,
                                         const std::vector<double>& alpha) {
    return gamma_transform(sys, derive_profile(sys), alpha);
}

// f(gamma; A) over the range's elements.  |result| <= |A|.
inline cd f_eval(const std::vector<int>& k_vec, const std::vector<double>& gamma,
                 const RangeSpec& range, const RangeLimits& lim = {}) {
    if (k_vec.size() != gamma.size()) throw std::invalid_argument("exponent/phase mismatch");
    auto elems = range.elements(lim);
    // power overflow pre-check
    for (int k : k_vec) {
        u128 pw = 1;
        for (int d = 0; d < k; ++d) {
            if (pw > (~u128(0)) / u128(elems.empty() ? 1 : elems.back()))
                throw overflow_error("x^k exceeds 128 bits in f_eval");
            pw *= u128(elems.back());
        }
    }
    cd sum = 0;
    for (i64 x : elems) {
        double frac = 0;
        for (size_t i = 0; i < k_vec.size(); ++i) {
            u128 pw = 1;
            for (int d = 0; d < k_vec[i]; ++d) pw *= u128(x);
            frac += frac_phase(gamma[i], pw);
        }
        sum += unit_phase(frac - std::floor(frac));
    }
    return sum;
}

inline cd f_eval(const GammaCoefficients& g, int var, const RangeSpec& range,
                 const RangeLimits& lim = {}) {
    return f_eval(g.exponents, g.per_variable.at(size_t(var)), range, lim);
}

// S(q, a) = sum_{x=1}^{q} e((a_1 x^{k_1} + ... ) / q), exact phases mod q.
inline cd complete_sum_S(i64 q, const std::vector<i64>& a, const std::vector<int>& k_vec) {
    if (q < 1) throw std::invalid_argument("need q >= 1");
    if (a.size() != k_vec.size()) throw std::invalid_argument("numerator/exponent mismatch");
    std::vector<cd> root(static_cast<size_t>(q));
    for (i64 j = 0; j < q; ++j) root[size_t(j)] = unit_phase(double(j) / double(q));
    cd sum = 0;
    for (i64 x = 1; x <= q; ++x) {
        i64 t = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            i64 term = (a[i] % q) * power_mod(x, k_vec[i], q) % q;
            t = (t + term % q + q) % q;
        }
        sum += root[size_t(t)];
    }
    return sum;
}

struct SqaScanReport {
    double max_ratio = 0.0;
    i64 argmax_q = 0;
    std::vector<i64> argmax_a;
    i64 evaluated = 0;
};

// max over q <= q_max and 1 <= a <= q of |S(q,a)| / ((q,a)^{1/k} q^{1-1/k}),
// k the largest exponent.  Finite by construction.
inline SqaScanReport sqa_bound_scan(i64 q_max, const std::vector<int>& k_vec,
                                    i64 max_evaluations = 50'000'000) {
    if (k_vec.empty()) throw std::invalid_argument("empty exponent set");
    int w = int(k_vec.size());
    int k = *std::max_element(k_vec.begin(), k_vec.end());
    SqaScanReport rep;
    double work = 0;
    for (i64 q = 1; q <= q_max; ++q) {
        work += std::pow(double(q), double(w + 1));
        if (work > double(max_evaluations))
            throw budget_error("sqa scan budget exceeded at q = " + std::to_string(q));
        std::vector<cd> root(static_cast<size_t>(q));
        for (i64 j = 0; j < q; ++j) root[size_t(j)] = unit_phase(double(j) / double(q));
        std::vector<std::vector<i64>> pw(static_cast<size_t>(w), std::vector<i64>(static_cast<size_t>(q)));
        for (int i = 0; i < w; ++i)
            for (i64 x = 0; x < q; ++x) pw[size_t(i)][size_t(x)] = power_mod(x + 1, k_vec[i], q);
        std::vector<i64> a(size_t(w), 1);
        while (true) {
            cd S = 0;
            for (i64 x = 0; x < q; ++x) {
                i64 t = 0;
                for (int i = 0; i < w; ++i) t += a[size_t(i)] % q * pw[size_t(i)][size_t(x)] % q;
                S += root[size_t(t % q)];
            }
            ++rep.evaluated;
            i64 g = q;
            for (i64 ai : a) g = std::gcd(g, ai);
            double denom = std::pow(double(g), 1.0 / k) * std::pow(double(q), 1.0 - 1.0 / k);
            double ratio = std::abs(S) / denom;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax_q = q;
                rep.argmax_a = a;
            }
            int pos = w - 1;
            while (pos >= 0 && a[size_t(pos)] == q) {
                a[size_t(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++a[size_t(pos)];
        }
    }
    return rep;
}

}  // namespace diagsys
