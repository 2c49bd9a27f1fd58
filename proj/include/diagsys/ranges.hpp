#pragma once

// Variable ranges: full [1,P], R-smooth numbers A(P,R) with R = P^eta, and
// the dyadic window (P/2, P].  Smooth enumeration sieves greatest prime
// factors; the element list is reproducible from the stored fields.

#include <cmath>

#include "common.hpp"

namespace diagsys {

struct RangeLimits {
    i64 max_elements = i64(1) << 26;
};

struct RangeSpec {
    enum class Kind { full, smooth, dyadic } kind = Kind::full;
    i64 P = 1;
    double eta = 0.0;  // smooth only; R = floor(P^eta)
    i64 R = 0;         // derived from eta at construction, kept for exactness

    static RangeSpec full(i64 P) { return make(Kind::full, P, 0.0, 0); }
    static RangeSpec dyadic(i64 P) { return make(Kind::dyadic, P, 0.0, 0); }
    static RangeSpec smooth(i64 P, double eta) {
        if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("need 0 < eta <= 1");
        i64 R = i64(std::floor(std::pow(double(P), eta) + 1e-9));
        return make(Kind::smooth, P, eta, std::max<i64>(R, 1));
    }
    static RangeSpec smooth_R(i64 P, i64 R) {
        if (R < 1 || R > P) throw std::invalid_argument("need 1 <= R <= P");
        return make(Kind::smooth, P, std::log(double(R)) / std::log(double(P)), R);
    }

    std::vector<i64> elements(const RangeLimits& lim = {}) const {
        if (P > lim.max_elements)
            throw budget_error("range enumeration budget exceeded (P = " + std::to_string(P) +
                               ")");
        std::vector<i64> out;
        switch (kind) {
            case Kind::full:
                out.reserve(size_t(P));
                for (i64 n = 1; n <= P; ++n) out.push_back(n);
                break;
            case Kind::dyadic:
                for (i64 n = P / 2 + 1; n <= P; ++n) out.push_back(n);
                break;
            case Kind::smooth: {
                // greatest-prime-factor sieve
                std::vector<int32_t> gpf(size_t(P) + 1, 0);
                for (i64 p = 2; p <= P; ++p)
                    if (gpf[size_t(p)] == 0)
                        for (i64 m = p; m <= P; m += p) gpf[size_t(m)] = int32_t(p);
                out.push_back(1);
                for (i64 n = 2; n <= P; ++n)
                    if (gpf[size_t(n)] <= R) out.push_back(n);
                break;
            }
        }
        return out;
    }

    std::string tag() const {
        switch (kind) {
            case Kind::full: return "full-P" + std::to_string(P);
            case Kind::dyadic: return "dyadic-P" + std::to_string(P);
            case Kind::smooth:
                return "smooth-P" + std::to_string(P) + "-R" + std::to_string(R);
        }
        return "?";
    }

  private:
    static RangeSpec make(Kind k, i64 P, double eta, i64 R) {
        if (P < 1) throw std::invalid_argument("need P >= 1");
        RangeSpec r;
        r.kind = k;
        r.P = P;
        r.eta = eta;
        r.R = R;
        return r;
    }
};

inline std::vector<i64> enumerate_range(const RangeSpec& spec, const RangeLimits& lim = {}) {
    return spec.elements(lim);
}

}  // namespace diagsys
