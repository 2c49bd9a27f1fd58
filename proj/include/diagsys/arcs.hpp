#pragma once

// Major/minor arc classification and the observational Weyl diagnostic.
// A point alpha in [0,1)^r is major at parameter X if some q <= X satisfies
// |q alpha_i - a_i| <= X P^{-d_i} for all i (box style "M"), or
// |alpha_i - a_i/q| <= X P^{-d_i} (style "N").  The search proposes
// continued-fraction convergent denominators per coordinate, then verifies
// jointly and falls back to an exhaustive scan for the least q.

#include <optional>

#include "counting.hpp"
#include "expsums.hpp"
#include "rng.hpp"

namespace diagsys {

struct ArcParams {
    double X = 1.0;
    double Q = 0.0;       // enlarged parameter for the 2-3 diagnostics (e.g. P^{3/4})
    i64 P = 1;
    double sigma = 0.0;   // Weyl exponent for diagnostics; 0 = library default
    bool n_style = false; // |alpha - a/q| boxes instead of |q alpha - a|
};

struct ArcClassification {
    bool major = false;
    i64 q = 0;
    std::vector<i64> a;  // residues mod q in [0, q-1]
};

namespace detail {

inline bool arc_box_ok(const std::vector<double>& alpha, const std::vector<int>& degrees, i64 q,
                       const ArcParams& par, std::vector<i64>& a_out) {
    a_out.assign(alpha.size(), 0);
    for (size_t i = 0; i < alpha.size(); ++i) {
        double qa = double(q) * alpha[i];
        i64 a = i64(std::llround(qa));
        double err = std::abs(qa - double(a));
        double box = par.X * std::pow(double(par.P), -double(degrees[i]));
        if (par.n_style) err /= double(q);
        if (err > box) return false;
        a_out[i] = ((a % q) + q) % q;
    }
    return true;
}

// denominators of continued-fraction convergents of x, capped at qmax
inline void convergent_denominators(double x, i64 qmax, std::vector<i64>& out) {
    double t = x - std::floor(x);
    i64 q_prev = 0, q_cur = 1;
    out.push_back(1);
    for (int it = 0; it < 64 && q_cur <= qmax; ++it) {
        if (t < 1e-15) break;
        t = 1.0 / t;
        i64 a = i64(std::floor(t));
        t -= std::floor(t);
        i64 q_next = a * q_cur + q_prev;
        if (q_next > qmax || q_next <= 0) break;
        out.push_back(q_next);
        q_prev = q_cur;
        q_cur = q_next;
    }
}

}  // namespace detail

inline ArcClassification classify_arc(const std::vector<double>& alpha,
                                      const std::vector<int>& degrees, const ArcParams& par) {
    if (alpha.size() != degrees.size()) throw std::invalid_argument("alpha/degree mismatch");
    for (double x : alpha)
        if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("alpha must lie in [0,1)");
    i64 qmax = i64(std::floor(par.X));
    ArcClassification res;
    if (qmax < 1) return res;

    std::vector<i64> cands;
    for (double x : alpha) detail::convergent_denominators(x, qmax, cands);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::vector<i64> a;
    std::optional<i64> found;
    for (i64 q : cands)
        if (detail::arc_box_ok(alpha, degrees, q, par, a)) {
            found = q;
            break;
        }
    // joint verification of the candidate list can miss the least q (or all
    // of them, for joint denominators); finish with the exhaustive scan
    i64 upper = found ? *found - 1 : qmax;
    for (i64 q = 1; q <= upper; ++q)
        if (detail::arc_box_ok(alpha, degrees, q, par, a)) {
            found = q;
            break;
        }
    if (found) {
        detail::arc_box_ok(alpha, degrees, *found, par, res.a);
        res.major = true;
        res.q = *found;
    }
    return res;
}

// Transformed numerators and offsets at a rational point a/q:
// Lambda_{j,l,n} = sum_{i in I_{l,n}} c_ij a_i, beta = alpha - a/q,
// delta = Gamma(beta), so that delta = Gamma(alpha) - Lambda/q.
struct MajorArcApproximant {
    i64 q = 1;
    std::vector<i64> a;
    std::vector<std::vector<i64>> lambda;  // [j][exponent index]
    std::vector<std::vector<double>> delta;
    std::vector<double> beta;
};

inline MajorArcApproximant major_arc_data(const AdditiveSystem& sys, const DegreeProfile& p,
                                          const std::vector<double>& alpha, i64 q,
                                          const std::vector<i64>& a) {
    if (int(alpha.size()) != sys.eq_count || a.size() != alpha.size())
        throw std::invalid_argument("alpha/a size mismatch");
    MajorArcApproximant out;
    out.q = q;
    out.a = a;
    out.beta.resize(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) out.beta[i] = alpha[i] - double(a[i]) / double(q);
    auto d = gamma_transform(sys, p, out.beta);
    out.delta = d.per_variable;
    out.lambda.assign(size_t(sys.var_count), std::vector<i64>(d.exponents.size(), 0));
    size_t idx = 0;
    for (int l = 0; l < p.level_count; ++l)
        for (int n = 0; n < p.distinct_counts[size_t(l)]; ++n, ++idx) {
            auto [b, e] = p.rows_of(l, n);
            for (i64 pr = b; pr < e; ++pr) {
                int i = p.row_permutation[size_t(pr)];
                for (int j = 0; j < sys.var_count; ++j)
                    out.lambda[size_t(j)][idx] += sys.coeffs[size_t(i)][size_t(j)] * a[size_t(i)];
            }
        }
    return out;
}

struct WeylDiagnostic {
    i64 samples_requested = 0;
    i64 samples_used = 0;
    i64 attempts = 0;
    double sigma = 0.0;
    double X = 0.0;
    // max over samples of (max over M-tuples of min_j |f_j|) * X^sigma / P
    double max_stat = 0.0;
    std::vector<double> argmax_alpha;
    // for pure {2,3} systems: same statistic normalized by Q^{1/3}/P
    std::optional<double> max_stat_23;
    i64 tuples_per_sample = 0;
};

// Samples minor-arc points (rejection against classify_arc) and records the
// empirical Weyl statistic.  Purely observational; nothing is asserted.
inline WeylDiagnostic weyl_diagnostic(const AdditiveSystem& sys, const DegreeProfile& p,
                                      const ArcParams& par, i64 samples, u64 seed,
                                      i64 max_tuples = 100'000) {
    WeylDiagnostic rep;
    rep.samples_requested = samples;
    rep.X = par.X;
    rep.sigma = par.sigma > 0 ? par.sigma : 1.0 / (8.0 * p.max_exponent);  // below 1/(2k)
    if (samples == 0) return rep;

    int M = p.max_multiplicity;
    double tuples = binomial_approx(sys.var_count, M);
    if (tuples > double(max_tuples))
        throw budget_error("too many M-tuples for the Weyl diagnostic");
    rep.tuples_per_sample = i64(tuples);

    bool is23 = true;
    for (int d : sys.degrees)
        if (d != 2 && d != 3) is23 = false;
    double Q = par.Q > 0 ? par.Q : std::pow(double(par.P), 0.75);

    Xoshiro256ss rng(mix_seed(seed, 0x7765796cULL));
    RangeSpec range = RangeSpec::full(par.P);
    i64 max_attempts = samples * 1000;
    for (i64 got = 0; got < samples && rep.attempts < max_attempts;) {
        ++rep.attempts;
        std::vector<double> alpha(static_cast<size_t>(sys.eq_count));
        for (auto& x : alpha) x = rng.uniform01();
        if (classify_arc(alpha, sys.degrees, par).major) continue;
        ++got;
        ++rep.samples_used;
        auto g = gamma_transform(sys, p, alpha);
        std::vector<double> absf(static_cast<size_t>(sys.var_count));
        for (int j = 0; j < sys.var_count; ++j) absf[size_t(j)] = std::abs(f_eval(g, j, range));
        // max over M-subsets of the min within the subset
        std::vector<int> c(static_cast<size_t>(M));
        for (int i = 0; i < M; ++i) c[size_t(i)] = i;
        double best = 0;
        do {
            double mn = std::numeric_limits<double>::infinity();
            for (int i : c) mn = std::min(mn, absf[size_t(i)]);
            best = std::max(best, mn);
        } while (detail::next_combination(c, sys.var_count));
        double stat = best * std::pow(par.X, rep.sigma) / double(par.P);
        if (stat > rep.max_stat) {
            rep.max_stat = stat;
            rep.argmax_alpha = alpha;
        }
        if (is23) {
            double s23 = best * std::cbrt(Q) / double(par.P);
            rep.max_stat_23 = std::max(rep.max_stat_23.value_or(0.0), s23);
        }
    }
    return rep;
}

}  // namespace diagsys
