#pragma once

// Exact solution counting.  count_solutions enumerates x in range^s with
// sum_j c_ij x_j^{d_i} = 0 for all i, either by brute-force odometer or by
// meet-in-the-middle: split the variables, build a multiplicity table of
// partial value vectors on one side, probe it with negated vectors from the
// other.  Partial power sums are 128-bit; overflow is pre-checked from
// max |c_ij| * s * P^{d_i} and reported, never wrapped.

#include <array>
#include <chrono>
#include <cstring>
#include <thread>
#include <unordered_map>

#include "gmp_util.hpp"
#include "profile.hpp"
#include "ranges.hpp"
#include "system.hpp"

namespace diagsys {

enum class CountMethod { brute, mitm };

struct CountResult {
    i128 count = 0;
    std::string system_digest;
    RangeSpec range;
    std::string method;
    double wall_time = 0.0;
    bool from_cache = false;

    i64 count_i64() const {
        if (count > i128(std::numeric_limits<i64>::max()))
            throw overflow_error("count exceeds 64 bits");
        return i64(count);
    }
};

struct CountLimits {
    i64 max_tuples = 400'000'000;       // enumerated tuples per side
    i64 max_table = i64(1) << 26;       // stored table entries
    int threads = 1;                    // probe-phase parallelism
    RangeLimits range;
};

namespace detail {

// per-column contribution tables: contrib[col][e * r + i] = c_ij * elems[e]^{d_i}
inline std::vector<std::vector<i128>> column_tables(const AdditiveSystem& sys,
                                                    const std::vector<int>& cols,
                                                    const std::vector<i64>& elems) {
    int r = sys.eq_count;
    std::vector<std::vector<i128>> out;
    for (int j : cols) {
        std::vector<i128> tab(elems.size() * size_t(r));
        for (size_t e = 0; e < elems.size(); ++e) {
            for (int i = 0; i < r; ++i) {
                i128 pw = 1;
                for (int d = 0; d < sys.degrees[size_t(i)]; ++d) pw *= elems[e];
                tab[e * size_t(r) + size_t(i)] = i128(sys.coeffs[size_t(i)][size_t(j)]) * pw;
            }
        }
        out.push_back(std::move(tab));
    }
    return out;
}

// max_e |sum over cols of c_ij e^{d_i}|, exact
inline mpz_class value_bound(const AdditiveSystem& sys, const std::vector<int>& cols, i64 max_elem,
                             int eq) {
    mpz_class pw = 1;
    for (int d = 0; d < sys.degrees[size_t(eq)]; ++d) pw *= mpz_from_i64(max_elem);
    mpz_class b = 0;
    for (int j : cols) b += abs(mpz_from_i64(sys.coeffs[size_t(eq)][size_t(j)])) * pw;
    return b;
}

template <typename Leaf>
void enumerate_tuples(const std::vector<std::vector<i128>>& contribs, int r, size_t n,
                      Leaf&& leaf, size_t first_col_begin = 0, size_t first_col_end = SIZE_MAX) {
    int m = int(contribs.size());
    std::array<i128, 16> partial{};  // r <= 16 enforced by callers
    auto rec = [&](auto&& self, int col) -> void {
        const auto& tab = contribs[size_t(col)];
        size_t b = (col == 0) ? first_col_begin : 0;
        size_t e = (col == 0) ? std::min(first_col_end, n) : n;
        if (col == m - 1) {
            std::array<i128, 16> v;
            for (size_t x = b; x < e; ++x) {
                for (int i = 0; i < r; ++i) v[size_t(i)] = partial[size_t(i)] + tab[x * size_t(r) + size_t(i)];
                leaf(v.data());
            }
            return;
        }
        std::array<i128, 16> saved;
        for (int i = 0; i < r; ++i) saved[size_t(i)] = partial[size_t(i)];
        for (size_t x = b; x < e; ++x) {
            for (int i = 0; i < r; ++i) partial[size_t(i)] = saved[size_t(i)] + tab[x * size_t(r) + size_t(i)];
            self(self, col + 1);
        }
        for (int i = 0; i < r; ++i) partial[size_t(i)] = saved[size_t(i)];
    };
    if (m > 0) rec(rec, 0);
}

template <int W>
struct VecKey {
    std::array<i64, W> v;
    bool operator==(const VecKey&) const = default;
};

template <int W>
struct VecKeyHash {
    size_t operator()(const VecKey<W>& k) const {
        u64 h = 0xcbf29ce484222325ULL;
        for (i64 x : k.v) {
            h ^= u64(x);
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return size_t(h);
    }
};

template <int W>
i128 mitm_with_width(const AdditiveSystem& sys, const std::vector<int>& map_cols,
                     const std::vector<int>& probe_cols, const std::vector<i64>& elems,
                     const CountLimits& lim) {
    int r = sys.eq_count;
    size_t n = elems.size();
    auto map_tabs = column_tables(sys, map_cols, elems);
    auto probe_tabs = column_tables(sys, probe_cols, elems);

    std::unordered_map<VecKey<W>, i64, VecKeyHash<W>> table;
    table.reserve(1024);
    enumerate_tuples(map_tabs, r, n, [&](const i128* v) {
        VecKey<W> key{};
        for (int i = 0; i < r; ++i) key.v[size_t(i)] = i64(v[i]);
        ++table[key];
        });
    if (i64(table.size()) > lim.max_table) throw budget_error("mitm table budget exceeded");

    int threads = std::max(1, lim.threads);
    std::vector<i128> partial_counts(size_t(threads), 0);
    size_t chunk = (n + size_t(threads) - 1) / size_t(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        size_t b = size_t(t) * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, t, b, e]() {
            i128 local = 0;
            enumerate_tuples(probe_tabs, r, n, [&](const i128* v) {
                VecKey<W> key{};
                for (int i = 0; i < r; ++i) key.v[size_t(i)] = i64(-v[i]);
                auto it = table.find(key);
                if (it != table.end()) local += it->second;
            }, b, e);
            partial_counts[size_t(t)] = local;
        });
    }
    for (auto& th : pool) th.join();
    i128 total = 0;  // merged in fixed order
    for (i128 c : partial_counts) total = checked_add(total, c);
    return total;
}

inline i128 mitm_dense_r1(const AdditiveSystem& sys, const std::vector<int>& map_cols,
                          const std::vector<int>& probe_cols, const std::vector<i64>& elems,
                          i64 bound, const CountLimits& lim) {
    size_t n = elems.size();
    auto map_tabs = column_tables(sys, map_cols, elems);
    auto probe_tabs = column_tables(sys, probe_cols, elems);
    std::vector<i64> dense(size_t(2 * bound + 1), 0);
    enumerate_tuples(map_tabs, 1, n, [&](const i128* v) { ++dense[size_t(i64(v[0]) + bound)]; });

    int threads = std::max(1, lim.threads);
    std::vector<i128> partial_counts(size_t(threads), 0);
    size_t chunk = (n + size_t(threads) - 1) / size_t(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        size_t b = size_t(t) * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, t, b, e]() {
            i128 local = 0;
            enumerate_tuples(probe_tabs, 1, n, [&](const i128* v) {
                i64 w = -i64(v[0]);
                if (w >= -bound && w <= bound) local += dense[size_t(w + bound)];
            }, b, e);
            partial_counts[size_t(t)] = local;
        });
    }
    for (auto& th : pool) th.join();
    i128 total = 0;
    for (i128 c : partial_counts) total = checked_add(total, c);
    return total;
}

inline double ipow_d(double b, int e) {
    double r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace detail

// Exact count over the given columns (defaults to all).  The mitm split
// balances the two products of range sizes, ties toward lower indices.
inline CountResult count_solutions_cols(const AdditiveSystem& sys, const std::vector<int>& cols,
                                        const RangeSpec& range, CountMethod method,
                                        const CountLimits& lim = {}) {
    sys.validate();
    auto t0 = std::chrono::steady_clock::now();
    auto elems = range.elements(lim.range);
    size_t n = elems.size();
    int r = sys.eq_count;
    if (r > 16) throw std::invalid_argument("counting supports up to 16 equations");
    int m = int(cols.size());

    CountResult res;
    res.system_digest = system_digest(sys);
    res.range = range;
    res.method = method == CountMethod::brute ? "brute" : "mitm";

    i128 count = 0;
    if (n == 0 || m == 0) {
        res.count = (m == 0) ? 1 : 0;
        return res;
    }

    // overflow pre-check: full-width partial sums must fit comfortably in i128
    mpz_class lim126 = mpz_class(1) << 126;
    for (int i = 0; i < r; ++i)
        if (detail::value_bound(sys, cols, elems.back(), i) >= lim126)
            throw overflow_error("power sums exceed the 128-bit budget");

    if (method == CountMethod::brute) {
        double tuples = detail::ipow_d(double(n), m);
        if (tuples > double(lim.max_tuples)) throw budget_error("brute-force budget exceeded");
        auto tabs = detail::column_tables(sys, cols, elems);
        detail::enumerate_tuples(tabs, r, n, [&](const i128* v) {
            for (int i = 0; i < r; ++i)
                if (v[i] != 0) return;
            ++count;
        });
    } else {
        int left = (m + 1) / 2;  // ties toward lower indices
        std::vector<int> lo(cols.begin(), cols.begin() + left);
        std::vector<int> hi(cols.begin() + left, cols.end());
        if (hi.empty()) {  // single column: count zeros directly
            auto tabs = detail::column_tables(sys, lo, elems);
            detail::enumerate_tuples(tabs, r, n, [&](const i128* v) {
                for (int i = 0; i < r; ++i)
                    if (v[i] != 0) return;
                ++count;
            });
            res.count = count;
            res.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return res;
        }
        // build the table on the smaller side, probe with the larger
        const auto& map_cols = hi;
        const auto& probe_cols = lo;
        double tuples = detail::ipow_d(double(n), int(map_cols.size())) +
                        detail::ipow_d(double(n), int(probe_cols.size()));
        if (tuples > double(lim.max_tuples)) throw budget_error("mitm budget exceeded");

        // 64-bit keys require per-equation bounds < 2^62
        mpz_class lim62 = mpz_class(1) << 62;
        bool fits64 = true;
        mpz_class b0 = 0;
        for (int i = 0; i < r; ++i) {
            mpz_class b = detail::value_bound(sys, cols, elems.back(), i);
            if (i == 0) b0 = b;
            if (b >= lim62) fits64 = false;
        }
        if (!fits64) throw overflow_error("mitm keys exceed 64 bits; use brute");

        if (r == 1 && 2 * b0 + 1 <= mpz_from_i64(lim.max_table)) {
            count = detail::mitm_dense_r1(sys, map_cols, probe_cols, elems, b0.get_si(), lim);
        } else if (r == 1) {
            count = detail::mitm_with_width<1>(sys, map_cols, probe_cols, elems, lim);
        } else if (r == 2) {
            count = detail::mitm_with_width<2>(sys, map_cols, probe_cols, elems, lim);
        } else if (r <= 4) {
            count = detail::mitm_with_width<4>(sys, map_cols, probe_cols, elems, lim);
        } else if (r <= 8) {
            count = detail::mitm_with_width<8>(sys, map_cols, probe_cols, elems, lim);
        } else {
            count = detail::mitm_with_width<16>(sys, map_cols, probe_cols, elems, lim);
        }
    }
    res.count = count;
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline CountResult count_solutions(const AdditiveSystem& sys, const RangeSpec& range,
                                   CountMethod method = CountMethod::mitm,
                                   const CountLimits& lim = {}) {
    std::vector<int> cols(size_t(sys.var_count), 0);
    for (int j = 0; j < sys.var_count; ++j) cols[size_t(j)] = j;
    return count_solutions_cols(sys, cols, range, method, lim);
}

// The symmetric system sum_{j=1}^{2u} (-1)^j x_j^{k_i} = 0 for each k_i.
inline AdditiveSystem mean_value_system(int u, std::vector<int> k_vec) {
    if (u < 1) throw std::invalid_argument("need u >= 1");
    std::sort(k_vec.begin(), k_vec.end());
    if (std::adjacent_find(k_vec.begin(), k_vec.end()) != k_vec.end())
        throw std::invalid_argument("exponents must be distinct");
    std::vector<int> degs(k_vec.rbegin(), k_vec.rend());
    std::vector<std::vector<i64>> cf;
    for (size_t i = 0; i < degs.size(); ++i) {
        std::vector<i64> row;
        for (int j = 0; j < 2 * u; ++j) row.push_back(j % 2 == 0 ? -1 : 1);  // (-1)^j, j from 1
        cf.push_back(std::move(row));
    }
    return AdditiveSystem::make(std::move(degs), std::move(cf)).first;
}

inline CountResult mean_value_J(int u, const std::vector<int>& k_vec, const RangeSpec& range,
                                CountMethod method = CountMethod::mitm,
                                const CountLimits& lim = {}) {
    return count_solutions(mean_value_system(u, k_vec), range, method, lim);
}

// Variable blocks B_{h,m} of size 2u_h, m = 1..mu_h - mu_{h+1}; leftovers in B_0.
struct BlockPartition {
    struct Block {
        int level = 0;  // h, 0-based
        int copy = 0;   // m, 0-based
        std::vector<int> vars;
    };
    std::vector<Block> blocks;
    std::vector<int> excess;  // B_0
    std::vector<i64> u;       // u_h per level
    i64 s0 = 0;               // sum (mu_h - mu_{h+1}) u_h

    static BlockPartition build(const DegreeProfile& p, std::vector<i64> u_per_level,
                                int var_count) {
        if (int(u_per_level.size()) != p.level_count)
            throw std::invalid_argument("need one u_h per level");
        BlockPartition part;
        part.u = std::move(u_per_level);
        int next = 0;
        for (int h = 0; h < p.level_count; ++h) {
            if (part.u[size_t(h)] < 1) throw std::invalid_argument("need u_h >= 1");
            int mu_next = (h + 1 < p.level_count) ? p.multiplicities[size_t(h + 1)] : 0;
            int copies = p.multiplicities[size_t(h)] - mu_next;
            part.s0 += i64(copies) * part.u[size_t(h)];
            for (int m = 0; m < copies; ++m) {
                Block b;
                b.level = h;
                b.copy = m;
                for (i64 i = 0; i < 2 * part.u[size_t(h)]; ++i) {
                    if (next >= var_count)
                        throw std::invalid_argument("partition needs " +
                                                    std::to_string(2 * part.s0) + " variables");
                    b.vars.push_back(next++);
                }
                part.blocks.push_back(std::move(b));
            }
        }
        while (next < var_count) part.excess.push_back(next++);
        return part;
    }

    void validate(const DegreeProfile& p, int var_count) const {
        if (int(u.size()) != p.level_count) throw std::invalid_argument("u/levels mismatch");
        std::vector<bool> seen(size_t(var_count), false);
        auto mark = [&](int v) {
            if (v < 0 || v >= var_count || seen[size_t(v)])
                throw std::invalid_argument("blocks must partition {1..s}");
            seen[size_t(v)] = true;
        };
        i64 expect_s0 = 0;
        size_t bi = 0;
        for (int h = 0; h < p.level_count; ++h) {
            int mu_next = (h + 1 < p.level_count) ? p.multiplicities[size_t(h + 1)] : 0;
            int copies = p.multiplicities[size_t(h)] - mu_next;
            expect_s0 += i64(copies) * u[size_t(h)];
            for (int m = 0; m < copies; ++m, ++bi) {
                if (bi >= blocks.size()) throw std::invalid_argument("missing blocks");
                if (blocks[bi].level != h || i64(blocks[bi].vars.size()) != 2 * u[size_t(h)])
                    throw std::invalid_argument("block size must be 2 u_h");
                for (int v : blocks[bi].vars) mark(v);
            }
        }
        if (bi != blocks.size()) throw std::invalid_argument("stray blocks");
        if (expect_s0 != s0) throw std::invalid_argument("s0 mismatch");
        for (int v : excess) mark(v);
        for (bool s : seen)
            if (!s) throw std::invalid_argument("blocks must cover {1..s}");
    }

    std::vector<int> blocked_vars() const {
        std::vector<int> out;
        for (const auto& b : blocks) out.insert(out.end(), b.vars.begin(), b.vars.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

// I_{u,k,M}: the count over the blocked variables only (B_0 must be empty
// after restriction, i.e. the blocks use 2 s_0 variables of sys).
inline CountResult mean_value_I(const AdditiveSystem& sys, const DegreeProfile& p,
                                const BlockPartition& part, const RangeSpec& range,
                                CountMethod method = CountMethod::mitm,
                                const CountLimits& lim = {}) {
    part.validate(p, sys.var_count);
    return count_solutions_cols(sys, part.blocked_vars(), range, method, lim);
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

// Least-squares slope of log count vs log P.
inline SlopeFit slope_estimate(const std::vector<std::pair<i64, i128>>& counts) {
    if (counts.size() < 3) throw std::invalid_argument("need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (i > 0 && counts[i].first <= counts[i - 1].first)
            throw std::invalid_argument("P values must increase");
        if (counts[i].second <= 0) throw std::invalid_argument("zero count in slope input");
        double x = std::log(double(counts[i].first));
        double y = std::log(double(counts[i].second));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(counts.size());
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (auto& [P, c] : counts) {
        double e = std::log(double(c)) - (fit.intercept + fit.slope * std::log(double(P)));
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace diagsys
