#pragma once

// The highly-non-singular check: for every level l, every exponent group
// I_{l,n}, and every mu_l-subset J of columns, the mu_l x mu_l minor of the
// coefficient block must be nonzero.  Determinants are exact (fraction-free
// Bareiss elimination over GMP integers); floating point could misclassify
// near-singular minors.

#include <optional>

#include "gmp_util.hpp"
#include "profile.hpp"
#include "rng.hpp"

namespace diagsys {

// Fraction-free Bareiss determinant of the rows x cols minor.
inline mpz_class minor_determinant(const AdditiveSystem& sys, const std::vector<int>& rows,
                                   const std::vector<int>& cols) {
    int m = int(rows.size());
    const size_t mm = size_t(m);
    std::vector<std::vector<mpz_class>> a(mm, std::vector<mpz_class>(mm));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[size_t(i)][size_t(j)] = mpz_from_i64(sys.coeffs[size_t(rows[size_t(i)])][size_t(cols[size_t(j)])]);
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < m - 1; ++k) {
        if (a[size_t(k)][size_t(k)] == 0) {
            int swap = -1;
            for (int i = k + 1; i < m; ++i)
                if (a[size_t(i)][size_t(k)] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(a[size_t(k)], a[size_t(swap)]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j) {
                a[size_t(i)][size_t(j)] = (a[size_t(i)][size_t(j)] * a[size_t(k)][size_t(k)] -
                                           a[size_t(i)][size_t(k)] * a[size_t(k)][size_t(j)]) /
                                          prev;  // exact division
            }
        prev = a[size_t(k)][size_t(k)];
    }
    return sign * a[size_t(m - 1)][size_t(m - 1)];
}

struct MinorWitness {
    int level = 0;              // 0-based level l
    int exp_index = 0;          // 0-based n within the level
    std::vector<int> columns;   // 0-based column subset J, ascending
};

struct NonSingularityReport {
    bool holds = false;
    std::optional<MinorWitness> witness;  // present iff !holds; minor is exactly zero
    i64 minors_checked = 0;
    bool decided_exhaustively = false;    // randomized mode never certifies
};

struct CheckOptions {
    enum class Mode { exhaustive, randomized } mode = Mode::exhaustive;
    u64 seed = 0;
    i64 trials = 20000;
    i64 max_minors = 4'000'000;
};

namespace detail {
// Original row indices of exponent group (l, n) via the profile permutation.
inline std::vector<int> group_rows(const DegreeProfile& p, int level, int n) {
    auto [b, e] = p.rows_of(level, n);
    std::vector<int> rows;
    for (i64 i = b; i < e; ++i) rows.push_back(p.row_permutation[size_t(i)]);
    return rows;
}
}  // namespace detail

inline NonSingularityReport check_highly_nonsingular(const AdditiveSystem& sys,
                                                     const DegreeProfile& p,
                                                     const CheckOptions& opt = {}) {
    NonSingularityReport rep;
    if (opt.mode == CheckOptions::Mode::exhaustive) {
        double total = 0;
        for (int l = 0; l < p.level_count; ++l)
            total += binomial_approx(sys.var_count, p.multiplicities[size_t(l)]) *
                     p.distinct_counts[size_t(l)];
        if (total > double(opt.max_minors))
            throw budget_error("exhaustive minor budget exceeded (" + std::to_string(i64(total)) +
                               " minors); use randomized mode");
        // first failing minor in lexicographic (l, n, J) order
        for (int l = 0; l < p.level_count; ++l) {
            int mu = p.multiplicities[size_t(l)];
            if (mu > sys.var_count) {
                // no mu-subset of columns exists; vacuously fails the rank condition
                rep.holds = false;
                rep.witness = MinorWitness{l, 0, {}};
                rep.decided_exhaustively = true;
                return rep;
            }
            for (int n = 0; n < p.distinct_counts[size_t(l)]; ++n) {
                auto rows = detail::group_rows(p, l, n);
                std::vector<int> cols(size_t(mu), 0);
                for (int j = 0; j < mu; ++j) cols[size_t(j)] = j;
                do {
                    ++rep.minors_checked;
                    if (minor_determinant(sys, rows, cols) == 0) {
                        rep.holds = false;
                        rep.witness = MinorWitness{l, n, cols};
                        rep.decided_exhaustively = true;
                        return rep;
                    }
                } while (detail::next_combination(cols, sys.var_count));
            }
        }
        rep.holds = true;
        rep.decided_exhaustively = true;
        return rep;
    }

    // Randomized: searches for counterexamples only.  A reported failure is
    // exact; "holds" just means no witness was found in the given trials.
    Xoshiro256ss rng(mix_seed(opt.seed, 0x6d696e6f72ULL));
    for (i64 t = 0; t < opt.trials; ++t) {
        int l = int(rng.below(p.level_count));
        int n = int(rng.below(p.distinct_counts[size_t(l)]));
        int mu = p.multiplicities[size_t(l)];
        if (mu > sys.var_count) {
            rep.holds = false;
            rep.witness = MinorWitness{l, n, {}};
            return rep;
        }
        std::vector<int> all(static_cast<size_t>(sys.var_count));
        for (int j = 0; j < sys.var_count; ++j) all[size_t(j)] = j;
        for (int j = 0; j < mu; ++j) std::swap(all[size_t(j)], all[size_t(j + rng.below(sys.var_count - j))]);
        std::vector<int> cols(all.begin(), all.begin() + mu);
        std::sort(cols.begin(), cols.end());
        auto rows = detail::group_rows(p, l, n);
        ++rep.minors_checked;
        if (minor_determinant(sys, rows, cols) == 0) {
            rep.holds = false;
            rep.witness = MinorWitness{l, n, cols};
            return rep;
        }
    }
    rep.holds = true;
    rep.decided_exhaustively = false;
    return rep;
}

inline NonSingularityReport check_highly_nonsingular(const AdditiveSystem& sys,
                                                     const CheckOptions& opt = {}) {
    return check_highly_nonsingular(sys, derive_profile(sys), opt);
}

}  // namespace diagsys
