#pragma once

// Oscillatory integrals v(beta; P) = int_{omega R}^P rho(log z/log R)^omega
// e(beta_1 z^{k_1} + ...) dz.  The interval is first split so each panel sees
// a bounded phase increment (the local bound on |phi'| caps the panel length),
// then each panel runs adaptive Simpson with Richardson extrapolation.

#include <complex>
#include <functional>

#include "dickman.hpp"
#include "expsums.hpp"

namespace diagsys {

struct QuadratureOptions {
    double rel_tol = 1e-6;
    int max_depth = 28;
    i64 max_panels = 200'000;
};

namespace detail {

inline cd adaptive_simpson(const std::function<cd(double)>& f, double a, double b, cd fa, cd fm,
                           cd fb, double tol, int depth, const QuadratureOptions& opt) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cd flm = f(lm), frm = f(rm);
    cd whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    cd left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cd right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cd delta = left + right - whole;
    if (depth >= opt.max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;  // Richardson step
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2, depth + 1, opt) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2, depth + 1, opt);
}

}  // namespace detail

// Integral of w(z) e(sum beta_i z^{k_i}) over [z_lo, z_hi].
inline cd oscillatory_integral(const std::vector<int>& k_vec, const std::vector<double>& beta,
                               double z_lo, double z_hi, const std::function<double(double)>& w,
                               const QuadratureOptions& opt = {}) {
    if (k_vec.size() != beta.size()) throw std::invalid_argument("exponent/phase mismatch");
    if (!(z_hi >= z_lo)) throw std::invalid_argument("empty z-interval");
    if (z_hi == z_lo) return 0.0;

    auto f = [&](double z) -> cd {
        double phase = 0;
        for (size_t i = 0; i < k_vec.size(); ++i) phase += beta[i] * std::pow(z, k_vec[i]);
        phase -= std::floor(phase);
        return w(z) * unit_phase(phase);
    };
    auto dphase_bound = [&](double a, double b) {
        double zm = std::max(std::abs(a), std::abs(b));
        double d = 0;
        for (size_t i = 0; i < k_vec.size(); ++i)
            d += std::abs(beta[i]) * k_vec[i] * std::pow(zm, k_vec[i] - 1);
        return 2.0 * std::numbers::pi * d;
    };

    // panels short enough that the phase advances at most ~1/4 cycle
    std::vector<std::pair<double, double>> panels;
    std::vector<std::pair<double, double>> stack{{z_lo, z_hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (dphase_bound(a, b) * (b - a) <= 0.5 * std::numbers::pi || b - a < 1e-12 * (z_hi - z_lo)) {
            panels.push_back({a, b});
        } else {
            double m = 0.5 * (a + b);
            stack.push_back({m, b});
            stack.push_back({a, m});
        }
        if (i64(panels.size() + stack.size()) > opt.max_panels)
            throw budget_error("oscillatory quadrature panel budget exceeded");
    }
    std::sort(panels.begin(), panels.end());

    // per-panel absolute tolerance summing to rel_tol * interval length,
    // the natural scale since |v| <= z_hi - z_lo
    cd total = 0;
    for (auto [a, b] : panels) {
        cd fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        double tol = opt.rel_tol * (b - a);
        total += detail::adaptive_simpson(f, a, b, fa, fm, fb, std::max(tol, 1e-16), 0, opt);
    }
    return total;
}

// v(beta; P) with the paper-shaped limits: unweighted integrates [0, P]; the
// smooth-weighted variant integrates [R, P] against rho(log z / log R).
inline cd v_integral(const std::vector<int>& k_vec, const std::vector<double>& beta, double P,
                     bool smooth_weighted, double R = 2.0, const QuadratureOptions& opt = {}) {
    if (P < 0) throw std::invalid_argument("need P >= 0");
    if (smooth_weighted && R < 2) throw std::invalid_argument("need R >= 2 when weighted");
    if (!smooth_weighted)
        return oscillatory_integral(k_vec, beta, 0.0, P, [](double) { return 1.0; }, opt);
    if (P <= R) return 0.0;
    double logR = std::log(R);
    return oscillatory_integral(
        k_vec, beta, R, P, [logR](double z) { return dickman_rho(std::log(z) / logR); }, opt);
}

}  // namespace diagsys
