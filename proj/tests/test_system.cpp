#include <catch2/catch_amalgamated.hpp>

#include "diagsys/nonsingular.hpp"
#include "diagsys/profile.hpp"
#include "diagsys/rng.hpp"
#include "diagsys/system.hpp"

using namespace diagsys;

namespace {

// Independent minor enumerator: every mu_l-subset of columns against every
// exponent group, straight cofactor-expansion determinants over i128.
i128 cofactor_det(const std::vector<std::vector<i64>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    i128 det = 0;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<i64>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<i64> row;
            for (size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            sub.push_back(row);
        }
        i128 term = i128(m[0][c]) * cofactor_det(sub);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

bool oracle_highly_nonsingular(const AdditiveSystem& sys) {
    auto p = derive_profile(sys);
    for (int l = 0; l < p.level_count; ++l) {
        int mu = p.multiplicities[size_t(l)];
        if (mu > sys.var_count) return false;
        for (int n = 0; n < p.distinct_counts[size_t(l)]; ++n) {
            auto [b, e] = p.rows_of(l, n);
            std::vector<int> rows;
            for (i64 i = b; i < e; ++i) rows.push_back(p.row_permutation[size_t(i)]);
            std::vector<int> cols(size_t(mu), 0);
            for (int j = 0; j < mu; ++j) cols[size_t(j)] = j;
            do {
                std::vector<std::vector<i64>> m;
                for (int ri : rows) {
                    std::vector<i64> row;
                    for (int cj : cols) row.push_back(sys.coeffs[size_t(ri)][size_t(cj)]);
                    m.push_back(row);
                }
                if (cofactor_det(m) == 0) return false;
            } while (diagsys::detail::next_combination(cols, sys.var_count));
        }
    }
    return true;
}

AdditiveSystem random_system(Xoshiro256ss& rng, int max_s, int max_r, int max_d, i64 cmax) {
    int s = 1 + int(rng.below(max_s));
    int r = 1 + int(rng.below(max_r));
    std::vector<int> degs;
    std::vector<std::vector<i64>> cf;
    for (int i = 0; i < r; ++i) {
        degs.push_back(1 + int(rng.below(max_d)));
        std::vector<i64> row;
        for (int j = 0; j < s; ++j) {
            i64 c = 1 + rng.below(cmax);
            if (rng.below(2)) c = -c;
            row.push_back(c);
        }
        cf.push_back(row);
    }
    return AdditiveSystem::make(degs, cf).first;
}

}  // namespace

TEST_CASE("parse: single-line document with header and two equations") {
    auto res = parse_system("2 | 3: 1 1 1 ; 2: 1 1 -2");
    REQUIRE(res.system.eq_count == 2);
    REQUIRE(res.system.var_count == 3);
    REQUIRE(res.system.degrees == std::vector<int>{3, 2});
    REQUIRE(res.system.coeffs[0] == std::vector<i64>{1, 1, 1});
    REQUIRE(res.system.coeffs[1] == std::vector<i64>{1, 1, -2});
}

TEST_CASE("parse: multi-line with comments, header form r | s") {
    auto res = parse_system("# demo\n2 | 4\n2: 1 2 3 4   # eq one\n3: -1 -1 -1 -1\n");
    REQUIRE(res.system.degrees == std::vector<int>{3, 2});
    REQUIRE(res.system.var_count == 4);
    // re-sorting recorded: sorted row 0 (degree 3) came from input row 1
    REQUIRE(res.input_order == std::vector<int>{1, 0});
}

TEST_CASE("parse: zero coefficient reported with position") {
    try {
        parse_system("2: 1 0 1");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(std::string(e.what()).find("zero coefficient at (1,2)") != std::string::npos);
        REQUIRE(e.line == 1);
    }
}

TEST_CASE("parse: malformed inputs carry line numbers") {
    REQUIRE_THROWS_AS(parse_system("hello world"), parse_error);
    REQUIRE_THROWS_AS(parse_system("0: 1 2"), parse_error);
    REQUIRE_THROWS_AS(parse_system("-3: 1 2"), parse_error);
    REQUIRE_THROWS_AS(parse_system("2: 1 2\n2: 1 2 3"), parse_error);
    REQUIRE_THROWS_AS(parse_system("3 | 2\n2: 1 2"), parse_error);  // header r mismatch
    REQUIRE_THROWS_AS(parse_system(""), parse_error);
    try {
        parse_system("2: 1 1\nbogus line\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(e.line == 2);
    }
}

TEST_CASE("parse: JSON mirror accepted and emitted") {
    auto res = parse_system(R"({"degrees":[2,3],"coeffs":[[1,2],[3,4]]})");
    REQUIRE(res.system.degrees == std::vector<int>{3, 2});
    auto again = parse_system(serialize_json(res.system));
    REQUIRE(again.system.degrees == res.system.degrees);
    REQUIRE(again.system.coeffs == res.system.coeffs);
}

TEST_CASE("parse: degree-1 equations accepted with a warning") {
    auto res = parse_system("1: 1 -1");
    REQUIRE(res.system.degrees == std::vector<int>{1});
    REQUIRE_FALSE(res.warnings.empty());
}

TEST_CASE("serialize/parse round-trip is canonical (property)") {
    Xoshiro256ss rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        auto sys = random_system(rng, 6, 4, 5, 9);
        auto canon = serialize_text(sys);
        auto re = parse_system(canon);
        REQUIRE(re.system.degrees == sys.degrees);
        REQUIRE(re.system.coeffs == sys.coeffs);
        REQUIRE(serialize_text(re.system) == canon);
        REQUIRE(system_digest(re.system) == system_digest(sys));
    }
}

TEST_CASE("profile: degrees (k,k,n) with k>n") {
    int k = 5, n = 2;
    auto sys = AdditiveSystem::make({k, k, n}, {{1, 1, 1}, {1, 2, 3}, {1, 1, -2}}).first;
    auto p = derive_profile(sys);
    REQUIRE(p.level_count == 2);
    REQUIRE(p.multiplicities == std::vector<int>{2, 1});
    REQUIRE(p.distinct_counts == std::vector<int>{1, 1});
    REQUIRE(p.max_multiplicity == 2);
    REQUIRE(p.cum_distinct == std::vector<int>{1, 2});
    REQUIRE(p.total_degree == 2 * k + n);
    REQUIRE(p.max_exponent == k);
}

TEST_CASE("profile: one quadratic and one cubic collapse to a single level") {
    auto sys = AdditiveSystem::make({2, 3}, {{1, 1, 1}, {1, 1, -2}}).first;
    auto p = derive_profile(sys);
    REQUIRE(p.level_count == 1);
    REQUIRE(p.multiplicities == std::vector<int>{1});
    REQUIRE(p.distinct_counts == std::vector<int>{2});
    REQUIRE(p.exponents[0] == std::vector<int>{2, 3});  // ascending tie-break
    REQUIRE(p.level_degree_sums[0] == 5);
    REQUIRE(p.total_degree == 5);
}

TEST_CASE("profile: single equation") {
    auto sys = AdditiveSystem::make({7}, {{2, -3}}).first;
    auto p = derive_profile(sys);
    REQUIRE(p.level_count == 1);
    REQUIRE(p.multiplicities == std::vector<int>{1});
    REQUIRE(p.total_degree == 7);
    REQUIRE(p.max_multiplicity == 1);
}

TEST_CASE("profile invariants on random systems (property)") {
    Xoshiro256ss rng(77);
    for (int iter = 0; iter < 1000; ++iter) {
        auto sys = random_system(rng, 5, 6, 6, 5);
        auto p = derive_profile(sys);
        i64 r = 0, K = 0;
        for (int l = 0; l < p.level_count; ++l) {
            r += i64(p.multiplicities[size_t(l)]) * p.distinct_counts[size_t(l)];
            K += i64(p.multiplicities[size_t(l)]) * p.level_degree_sums[size_t(l)];
            if (l > 0) REQUIRE(p.multiplicities[size_t(l)] < p.multiplicities[size_t(l - 1)]);
        }
        REQUIRE(r == sys.eq_count);
        REQUIRE(K == p.total_degree);
        REQUIRE(i64(p.r_index.back().back()) == sys.eq_count);

        // un-permuting reproduces the degree multiset exactly
        auto ordered = profile_ordered(sys, p);
        auto a = ordered.degrees, b = sys.degrees;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        REQUIRE(a == b);

        // the permuted rows are the original rows
        for (size_t i = 0; i < ordered.coeffs.size(); ++i)
            REQUIRE(ordered.coeffs[i] == sys.coeffs[size_t(p.row_permutation[i])]);
    }
}

TEST_CASE("nonsingular: single equation always holds") {
    auto sys = AdditiveSystem::make({3}, {{1, 2, -5, 7}}).first;
    auto rep = check_highly_nonsingular(sys);
    REQUIRE(rep.holds);
    REQUIRE(rep.decided_exhaustively);
}

TEST_CASE("nonsingular: spec pair fails with witness {1,2}") {
    auto sys = AdditiveSystem::make({2, 2}, {{1, 1, 1}, {1, 1, 2}}).first;
    auto rep = check_highly_nonsingular(sys);
    REQUIRE_FALSE(rep.holds);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.witness->columns == std::vector<int>{0, 1});
    // the witness minor, recomputed, is exactly zero
    auto p = derive_profile(sys);
    auto [b, e] = p.rows_of(rep.witness->level, rep.witness->exp_index);
    std::vector<int> rows;
    for (i64 i = b; i < e; ++i) rows.push_back(p.row_permutation[size_t(i)]);
    REQUIRE(minor_determinant(sys, rows, rep.witness->columns) == 0);
}

TEST_CASE("nonsingular: random entries in [1,100] almost surely hold") {
    Xoshiro256ss rng(5);
    auto make_random = [&]() {
        std::vector<std::vector<i64>> cf(2, std::vector<i64>(6));
        for (auto& row : cf)
            for (auto& c : row) c = 1 + rng.below(100);
        return AdditiveSystem::make({2, 2}, cf).first;
    };
    int holds = 0;
    for (int iter = 0; iter < 50; ++iter) {
        auto sys = make_random();
        auto rep = check_highly_nonsingular(sys);
        REQUIRE(rep.holds == oracle_highly_nonsingular(sys));
        holds += rep.holds;
    }
    REQUIRE(holds >= 48);  // vanishing minors have probability ~ 1e-2 overall
}

TEST_CASE("nonsingular: agrees with oracle on random systems s<=8, r<=3") {
    Xoshiro256ss rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        auto sys = random_system(rng, 8, 3, 4, 3);
        REQUIRE(check_highly_nonsingular(sys).holds == oracle_highly_nonsingular(sys));
    }
}

TEST_CASE("nonsingular: verdict invariant under row scaling") {
    Xoshiro256ss rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        auto sys = random_system(rng, 6, 3, 4, 4);
        auto scaled = scale_row(sys, int(rng.below(sys.eq_count)), 1 + rng.below(7));
        REQUIRE(check_highly_nonsingular(sys).holds == check_highly_nonsingular(scaled).holds);
    }
}

TEST_CASE("nonsingular: randomized mode finds exact witnesses") {
    auto sys = AdditiveSystem::make({2, 2}, {{1, 1, 1, 1}, {2, 2, 3, 4}}).first;
    CheckOptions opt;
    opt.mode = CheckOptions::Mode::randomized;
    opt.seed = 42;
    opt.trials = 5000;
    auto rep = check_highly_nonsingular(sys, derive_profile(sys), opt);
    REQUIRE_FALSE(rep.holds);  // columns {0,1} give a zero 2x2 minor
    REQUIRE(rep.witness.has_value());
    auto p = derive_profile(sys);
    auto [b, e] = p.rows_of(rep.witness->level, rep.witness->exp_index);
    std::vector<int> rows;
    for (i64 i = b; i < e; ++i) rows.push_back(p.row_permutation[size_t(i)]);
    REQUIRE(minor_determinant(sys, rows, rep.witness->columns) == 0);

    // randomized mode never certifies
    auto good = AdditiveSystem::make({2, 2}, {{1, 1, 1, 1}, {1, 2, 3, 4}}).first;
    auto rep2 = check_highly_nonsingular(good, derive_profile(good), opt);
    REQUIRE(rep2.holds);
    REQUIRE_FALSE(rep2.decided_exhaustively);
}

TEST_CASE("nonsingular: exhaustive budget enforced") {
    std::vector<std::vector<i64>> cf(4, std::vector<i64>(30, 1));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 30; ++j) cf[size_t(i)][size_t(j)] = 1 + (i + 1) * j;
    auto sys = AdditiveSystem::make({2, 2, 2, 2}, cf).first;
    CheckOptions opt;
    opt.max_minors = 1000;  // C(30,4) = 27405 minors needed
    REQUIRE_THROWS_AS(check_highly_nonsingular(sys, derive_profile(sys), opt), budget_error);
}

TEST_CASE("digest distinguishes systems, stable under reparse") {
    auto a = parse_system("2: 1 1 -1").system;
    auto b = parse_system("2: 1 1 -2").system;
    REQUIRE(system_digest(a) != system_digest(b));
    REQUIRE(system_digest(a) == system_digest(parse_system(serialize_text(a)).system));
}
