#pragma once

// Degree profile of a system: degrees regrouped by decreasing multiplicity.
// Level l holds the nu(l) distinct exponents that occur with multiplicity
// mu_l; mu_1 > ... > mu_t.  Derived quantities: K_l, K, M = mu_1,
// varpi_h = nu(1)+...+nu(h) (cum_distinct), ktilde_h (max_exp_upto), and the
// permutation taking the degree-sorted system into profile order.

#include <algorithm>
#include <map>

#include "system.hpp"

namespace diagsys {

struct DegreeProfile {
    int level_count = 0;                      // t
    std::vector<int> multiplicities;          // mu_l, strictly decreasing
    std::vector<std::vector<int>> exponents;  // per level, ascending
    std::vector<int> distinct_counts;         // nu(l)
    std::vector<std::vector<i64>> r_index;    // r_{l,n}, cumulative row counts
    std::vector<i64> level_degree_sums;       // K_l
    i64 total_degree = 0;                     // K
    int max_multiplicity = 0;                 // M
    std::vector<int> cum_distinct;            // varpi_h
    std::vector<int> max_exp_upto;            // ktilde_h
    int max_exponent = 0;                     // k = ktilde_t
    int min_multiplicity = 0;                 // mu_t
    std::vector<int> row_permutation;         // profile row i = original row row_permutation[i]

    int equation_count() const { return r_index.empty() ? 0 : int(r_index.back().back()); }

    // Distinct exponents of levels 1..h, ascending.
    std::vector<int> degree_set_upto(int h) const {
        std::vector<int> out;
        for (int l = 0; l < h; ++l) out.insert(out.end(), exponents[l].begin(), exponents[l].end());
        std::sort(out.begin(), out.end());
        return out;
    }

    // Profile-order row range [begin, end) of exponent n at level l (0-based).
    std::pair<i64, i64> rows_of(int level, int n) const {
        i64 end = r_index[size_t(level)][size_t(n)];
        i64 begin = end - multiplicities[size_t(level)];
        return {begin, end};
    }
};

inline DegreeProfile derive_profile(const AdditiveSystem& sys) {
    sys.validate();
    std::map<int, int> mult;  // degree -> multiplicity
    for (int d : sys.degrees) ++mult[d];
    std::map<int, std::vector<int>, std::greater<int>> levels;  // multiplicity -> exponents asc
    for (auto& [deg, m] : mult) levels[m].push_back(deg);

    DegreeProfile p;
    p.level_count = int(levels.size());
    i64 rows_before = 0;
    for (auto& [m, exps] : levels) {
        p.multiplicities.push_back(m);
        p.exponents.push_back(exps);  // ascending: map iterates degrees ascending
        p.distinct_counts.push_back(int(exps.size()));
        std::vector<i64> ridx;
        i64 sum = 0;
        for (int n = 0; n < int(exps.size()); ++n) {
            rows_before += m;
            ridx.push_back(rows_before);
            sum += exps[size_t(n)];
        }
        p.r_index.push_back(std::move(ridx));
        p.level_degree_sums.push_back(sum);
    }
    p.max_multiplicity = p.multiplicities.front();
    p.min_multiplicity = p.multiplicities.back();
    int cum = 0, kmax = 0;
    for (int l = 0; l < p.level_count; ++l) {
        cum += p.distinct_counts[size_t(l)];
        kmax = std::max(kmax, p.exponents[size_t(l)].back());
        p.cum_distinct.push_back(cum);
        p.max_exp_upto.push_back(kmax);
        p.total_degree += i64(p.multiplicities[size_t(l)]) * p.level_degree_sums[size_t(l)];
    }
    p.max_exponent = kmax;

    // Profile row order: level by level, exponents ascending, the mu_l rows of
    // each exponent in original order.
    std::vector<bool> used(size_t(sys.eq_count), false);
    for (int l = 0; l < p.level_count; ++l)
        for (int exp : p.exponents[size_t(l)])
            for (int i = 0; i < sys.eq_count; ++i)
                if (!used[size_t(i)] && sys.degrees[size_t(i)] == exp) {
                    used[size_t(i)] = true;
                    p.row_permutation.push_back(i);
                }
    return p;
}

// The system with rows rearranged into profile order.
inline AdditiveSystem profile_ordered(const AdditiveSystem& sys, const DegreeProfile& p) {
    AdditiveSystem out;
    out.var_count = sys.var_count;
    out.eq_count = sys.eq_count;
    for (int i : p.row_permutation) {
        out.degrees.push_back(sys.degrees[size_t(i)]);
        out.coeffs.push_back(sys.coeffs[size_t(i)]);
    }
    return out;  // not validate()'d: profile order is not degree-sorted
}

}  // namespace diagsys
