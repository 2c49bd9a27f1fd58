#pragma once

// Variable-count bounds from a degree profile.  The per-level quantity is
// s(k_h) = max(plugin value, k(1+varpi_h)/2); totals are
//   G*  <= 2 sum_h (mu_h - mu_{h+1}) s(k_h) + M      (smooth-range plugins u0)
//   tG* <= 2 sum_h (mu_h - mu_{h+1}) s~(k_h) + 1     (full-range plugins v0)
// Half-integers are kept exact by carrying 2*s(k_h) as an integer.
//
// The plugin registry is data-driven: defaults are the standard literature
// values (v0 = ktilde(ktilde-1) for ktilde >= 3, v0(2) = 2 by Hua's lemma,
// u0 <= ceil(H) with H(k_h) = ktilde * varpi * (log ktilde + 3 log varpi),
// the latter carrying an uncomputable (1+o(1)) factor, hence a caveat).
// Users may override any degree set with sharper values.

#include <json.hpp>

#include <cmath>
#include <optional>

#include "profile.hpp"

namespace diagsys {

struct MeanValuePlugin {
    enum class Kind { u0, v0 } kind = Kind::v0;
    std::vector<int> degrees;  // ascending distinct exponent set this applies to
    i64 value = 0;
    std::string source;
    bool asymptotic = false;  // carries a (1+o(1)) factor
    std::vector<std::string> caveats;
};

inline MeanValuePlugin v0_estimate(std::vector<int> k_vec) {
    if (k_vec.empty()) throw std::invalid_argument("empty exponent set");
    std::sort(k_vec.begin(), k_vec.end());
    for (int k : k_vec)
        if (k < 1) throw std::invalid_argument("exponent < 1");
    MeanValuePlugin p;
    p.kind = MeanValuePlugin::Kind::v0;
    p.degrees = k_vec;
    int kt = k_vec.back();
    if (kt == 1) {
        p.value = 1;
        p.source = "trivial (linear)";
    } else if (kt == 2 && k_vec.size() == 1) {
        p.value = 2;
        p.source = "Hua's lemma";
    } else {
        p.value = i64(kt) * (kt - 1);
        p.source = "Wooley, Vinogradov mean value (ktilde(ktilde-1))";
        if (k_vec.front() <= 2)
            p.caveats.push_back("mixed set containing 2 estimated trivially via v0(1,...,k)");
    }
    return p;
}

inline MeanValuePlugin u0_estimate(std::vector<int> k_vec) {
    if (k_vec.empty()) throw std::invalid_argument("empty exponent set");
    std::sort(k_vec.begin(), k_vec.end());
    int kt = k_vec.back();
    if (kt < 2) throw std::invalid_argument("u0 plugin needs ktilde >= 2");
    double w = double(k_vec.size());
    double H = double(kt) * w * (std::log(double(kt)) + 3.0 * std::log(w));
    MeanValuePlugin p;
    p.kind = MeanValuePlugin::Kind::u0;
    p.degrees = k_vec;
    p.value = i64(std::ceil(H - 1e-12));
    p.source = "smooth Weyl mean value, ceil(H(k))";
    p.asymptotic = true;  // the (1+o(1)) factor is not computable
    return p;
}

struct LevelBound {
    int level = 0;                     // h, 1-based in reports
    MeanValuePlugin::Kind kind = MeanValuePlugin::Kind::v0;
    std::vector<int> degrees;          // k_h, ascending
    MeanValuePlugin plugin;
    i64 twice_half_term = 0;           // k(1+varpi_h), i.e. 2 * (k(1+varpi_h)/2)
    i64 twice_s = 0;                   // 2 * s(k_h) = max(2*plugin, twice_half_term)
};

struct NamedBound {
    std::string name;
    std::optional<i64> value;
    std::string asymptotic_form;  // e.g. "(6+o(1)) k log k" when applicable
    std::vector<std::string> caveats;
};

struct BoundReport {
    std::optional<i64> G_star_upper;
    std::optional<i64> tG_star_upper;
    std::vector<LevelBound> per_level;
    std::string formula_used;
    std::vector<std::string> caveats;
    std::vector<NamedBound> named;  // used by the corollary-style reports
};

namespace detail {
inline void check_plugins(const DegreeProfile& p, const std::vector<MeanValuePlugin>& plugins,
                          MeanValuePlugin::Kind kind) {
    if (int(plugins.size()) != p.level_count)
        throw std::invalid_argument("need one plugin per level");
    for (int h = 0; h < p.level_count; ++h) {
        if (plugins[size_t(h)].kind != kind)
            throw std::invalid_argument("plugin kind mismatch at level " + std::to_string(h + 1));
        if (plugins[size_t(h)].degrees != p.degree_set_upto(h + 1))
            throw std::invalid_argument("plugin degree set mismatch at level " +
                                        std::to_string(h + 1));
    }
}

inline i64 accumulate_levels(const DegreeProfile& p, const std::vector<MeanValuePlugin>& plugins,
                             MeanValuePlugin::Kind kind, std::vector<LevelBound>& out,
                             std::vector<std::string>& caveats) {
    i64 twice_sum = 0;  // 2 sum (mu_h - mu_{h+1}) s(k_h)
    for (int h = 0; h < p.level_count; ++h) {
        LevelBound lb;
        lb.level = h + 1;
        lb.kind = kind;
        lb.degrees = p.degree_set_upto(h + 1);
        lb.plugin = plugins[size_t(h)];
        lb.twice_half_term = i64(p.max_exponent) * (1 + p.cum_distinct[size_t(h)]);
        lb.twice_s = std::max(2 * lb.plugin.value, lb.twice_half_term);
        int mu_next = (h + 1 < p.level_count) ? p.multiplicities[size_t(h + 1)] : 0;
        twice_sum += i64(p.multiplicities[size_t(h)] - mu_next) * lb.twice_s;
        for (const auto& c : lb.plugin.caveats) caveats.push_back(c);
        if (lb.plugin.asymptotic) caveats.push_back("asymptotic plug-in used at level " +
                                                    std::to_string(h + 1));
        out.push_back(std::move(lb));
    }
    return twice_sum;
}
}  // namespace detail

// Theorem-1-style totals.  Pass an empty u0 (or v0) list to skip that bound.
inline BoundReport theorem1_bounds(const DegreeProfile& p,
                                   const std::vector<MeanValuePlugin>& u0_plugins,
                                   const std::vector<MeanValuePlugin>& v0_plugins) {
    BoundReport rep;
    rep.formula_used = "theorem1";
    if (!u0_plugins.empty()) {
        detail::check_plugins(p, u0_plugins, MeanValuePlugin::Kind::u0);
        i64 tw = detail::accumulate_levels(p, u0_plugins, MeanValuePlugin::Kind::u0,
                                           rep.per_level, rep.caveats);
        rep.G_star_upper = tw + p.max_multiplicity;  // "... + M"
    }
    if (!v0_plugins.empty()) {
        detail::check_plugins(p, v0_plugins, MeanValuePlugin::Kind::v0);
        i64 tw = detail::accumulate_levels(p, v0_plugins, MeanValuePlugin::Kind::v0,
                                           rep.per_level, rep.caveats);
        rep.tG_star_upper = tw + 1;  // "... + 1"
    }
    return rep;
}

inline std::vector<MeanValuePlugin> default_v0_plugins(const DegreeProfile& p) {
    std::vector<MeanValuePlugin> out;
    for (int h = 1; h <= p.level_count; ++h) out.push_back(v0_estimate(p.degree_set_upto(h)));
    return out;
}

inline std::vector<MeanValuePlugin> default_u0_plugins(const DegreeProfile& p) {
    std::vector<MeanValuePlugin> out;
    for (int h = 1; h <= p.level_count; ++h) out.push_back(u0_estimate(p.degree_set_upto(h)));
    return out;
}

// Registry of user-supplied plugin overrides, keyed by (kind, degree set).
struct PluginRegistry {
    std::vector<MeanValuePlugin> entries;

    std::optional<MeanValuePlugin> lookup(MeanValuePlugin::Kind kind,
                                          const std::vector<int>& degrees) const {
        for (const auto& e : entries)
            if (e.kind == kind && e.degrees == degrees) return e;
        return std::nullopt;
    }

    static PluginRegistry from_json(const std::string& text) {
        PluginRegistry reg;
        nlohmann::json doc = nlohmann::json::parse(text);
        for (const auto& it : doc) {
            MeanValuePlugin p;
            std::string kind = it.at("kind").get<std::string>();
            if (kind == "u0")
                p.kind = MeanValuePlugin::Kind::u0;
            else if (kind == "v0")
                p.kind = MeanValuePlugin::Kind::v0;
            else
                throw std::invalid_argument("plugin kind must be u0 or v0");
            p.degrees = it.at("degrees").get<std::vector<int>>();
            std::sort(p.degrees.begin(), p.degrees.end());
            p.value = it.at("value").get<i64>();
            if (p.value < 1) throw std::invalid_argument("plugin value must be >= 1");
            p.source = it.value("source", std::string("user registry"));
            p.asymptotic = it.value("asymptotic", false);
            reg.entries.push_back(std::move(p));
        }
        return reg;
    }
};

inline std::vector<MeanValuePlugin> plugins_with_overrides(const DegreeProfile& p,
                                                           MeanValuePlugin::Kind kind,
                                                           const PluginRegistry& reg) {
    std::vector<MeanValuePlugin> out;
    for (int h = 1; h <= p.level_count; ++h) {
        auto set = p.degree_set_upto(h);
        if (auto hit = reg.lookup(kind, set))
            out.push_back(*hit);
        else
            out.push_back(kind == MeanValuePlugin::Kind::v0 ? v0_estimate(set) : u0_estimate(set));
    }
    return out;
}

namespace detail {
// A profile for the given degree multiset over a dummy system.
inline DegreeProfile profile_of_degrees(const std::vector<int>& degs) {
    std::vector<std::vector<i64>> cf(degs.size(), std::vector<i64>{1});
    return derive_profile(AdditiveSystem::make(degs, cf).first);
}

inline BoundReport bounds_of_degrees(const std::vector<int>& degs, bool want_G, bool want_tG) {
    auto p = profile_of_degrees(degs);
    return theorem1_bounds(p, want_G ? default_u0_plugins(p) : std::vector<MeanValuePlugin>{},
                           want_tG ? default_v0_plugins(p) : std::vector<MeanValuePlugin>{});
}
}  // namespace detail

// The six bounds printed for degree patterns (k,k,n), (k,k,n,n), (k,n,n),
// k > n >= 2, all routed through the general machinery.
inline BoundReport kncor_bounds(int k, int n) {
    if (!(k > n && n >= 2)) throw std::invalid_argument("kncor_bounds needs k > n >= 2");
    BoundReport rep;
    rep.formula_used = "kncor";
    auto emit_tG = [&](const std::string& name, const std::vector<int>& degs) {
        auto r = detail::bounds_of_degrees(degs, false, true);
        NamedBound nb;
        nb.name = name;
        nb.value = r.tG_star_upper;
        nb.caveats = r.caveats;
        rep.named.push_back(std::move(nb));
    };
    auto emit_G = [&](const std::string& name, const std::vector<int>& degs,
                      const std::string& shape) {
        auto r = detail::bounds_of_degrees(degs, true, false);
        NamedBound nb;
        nb.name = name;
        nb.value = r.G_star_upper;
        nb.asymptotic_form = shape;
        nb.caveats = r.caveats;
        rep.named.push_back(std::move(nb));
    };
    emit_tG("tG*(k,k,n)", {k, k, n});
    emit_tG("tG*(k,k,n,n)", {k, k, n, n});
    emit_tG("tG*(k,n,n)", {k, n, n});
    emit_G("G*(k,k,n)", {k, k, n}, "(6+o(1)) k log k");
    emit_G("G*(k,k,n,n)", {k, k, n, n}, "(8+o(1)) k log k");
    emit_G("G*(k,n,n)", {k, n, n}, "(4+o(1)) k log k + 2 n log n");
    rep.caveats.push_back("G* values use asymptotic u0 plug-ins (ceil of H, (1+o(1)) dropped)");
    return rep;
}

// Mixed quadratic/cubic totals.  tG* has two branch formulas that coincide at
// r_Q = r_C (checked); G* is printed only for r_C > r_Q.
inline BoundReport quadcub_bounds(i64 rQ, i64 rC) {
    if (rQ < 0 || rC < 0 || rQ + rC < 1)
        throw std::invalid_argument("quadcub_bounds needs r_Q + r_C >= 1");
    BoundReport rep;
    i64 byQ = 4 * rQ + (20 * rC) / 3 + 1;  // r_Q >= r_C branch
    i64 byC = 8 * rC + (8 * rQ) / 3 + 1;   // r_C >= r_Q branch
    if (rQ >= rC && rC >= rQ) {
        if (byQ != byC)
            throw std::logic_error("branch formulas disagree at r_Q = r_C");
        rep.tG_star_upper = byQ;
        rep.formula_used = "quadcub.tie";
    } else if (rQ >= rC) {
        rep.tG_star_upper = byQ;
        rep.formula_used = "quadcub.rQ>=rC";
    } else {
        rep.tG_star_upper = byC;
        rep.formula_used = "quadcub.rC>=rQ";
    }
    if (rC > rQ) {
        rep.G_star_upper = 7 * rC + (11 * rQ + 2) / 3;  // ceil(11 rQ / 3)
        rep.named.push_back(NamedBound{"G*(3,2;r_C,r_Q)", rep.G_star_upper, "", {}});
    }
    rep.named.push_back(NamedBound{"tG*(2,3;r_Q,r_C)", rep.tG_star_upper, "", {}});
    return rep;
}

}  // namespace diagsys
