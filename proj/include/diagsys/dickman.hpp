#pragma once

// Dickman's rho: 1 on [0,1], 1 - log u on [1,2] (closed forms), and beyond
// that marched from the delay equation u rho'(u) = -rho(u-1) with Simpson
// panels on a fine grid; values between grid points come from 4-point
// Lagrange interpolation.  Monotone non-increasing and positive.

#include <cmath>
#include <vector>

#include "common.hpp"

namespace diagsys {

namespace detail {

class DickmanTable {
  public:
    static constexpr double kStep = 1.0 / 2048;
    static constexpr double kMax = 64.0;

    DickmanTable() {
        size_t n = size_t(kMax / kStep) + 1;
        vals_.resize(n);
        size_t i2 = size_t(2.0 / kStep);
        for (size_t i = 0; i <= i2; ++i) vals_[i] = closed_form(double(i) * kStep);
        for (size_t i = i2 + 1; i < n; ++i) {
            double u = double(i) * kStep;
            double a = u - kStep;
            // Simpson over [u-h, u] of rho(t-1)/t; rho(t-1) is already known
            double fa = eval_upto(a - 1.0, i - 1) / a;
            double fm = eval_upto(a + kStep / 2 - 1.0, i - 1) / (a + kStep / 2);
            double fb = eval_upto(u - 1.0, i - 1) / u;
            vals_[i] = vals_[i - 1] - kStep / 6.0 * (fa + 4.0 * fm + fb);
        }
    }

    double eval(double u) const {
        if (u <= 2.0) return closed_form(u);
        if (u >= kMax) return 0.0;  // below 1e-90 at this point
        return interpolate(u, vals_.size() - 1);
    }

  private:
    static double closed_form(double u) {
        if (u <= 1.0) return 1.0;
        return 1.0 - std::log(u);
    }

    double eval_upto(double u, size_t frontier) const {
        if (u <= 2.0) return closed_form(u);
        return interpolate(u, frontier);
    }

    double interpolate(double u, size_t frontier) const {
        double x = u / kStep;
        size_t i = size_t(x);
        size_t lo = (i >= 1) ? i - 1 : 0;
        if (lo + 3 > frontier) lo = frontier - 3;
        double t = x - double(lo);
        // Lagrange through 4 consecutive grid points
        double c0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
        double c1 = t * (t - 2) * (t - 3) / 2.0;
        double c2 = -t * (t - 1) * (t - 3) / 2.0;
        double c3 = t * (t - 1) * (t - 2) / 6.0;
        return c0 * vals_[lo] + c1 * vals_[lo + 1] + c2 * vals_[lo + 2] + c3 * vals_[lo + 3];
    }

    std::vector<double> vals_;
};

}  // namespace detail

inline double dickman_rho(double u) {
    if (u < 0.0) throw std::invalid_argument("dickman_rho needs u >= 0");
    static const detail::DickmanTable table;
    return table.eval(u);
}

}  // namespace diagsys
