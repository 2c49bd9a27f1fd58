#pragma once

// On-disk count cache keyed by (system digest, range fields, method), one
// JSON file per key, so verify pipelines are resumable.  Counts are stored
// as decimal strings.  The directory comes from --cache-dir or the
// DIAGSYS_CACHE_DIR environment variable; unset means caching is off.

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "counting.hpp"

namespace diagsys {

struct CountCache {
    std::filesystem::path dir;
    bool enabled = false;

    static CountCache disabled() { return {}; }

    static CountCache at(const std::filesystem::path& p) {
        CountCache c;
        c.dir = p;
        c.enabled = !p.empty();
        if (c.enabled) std::filesystem::create_directories(p / "counts");
        return c;
    }

    static CountCache from_env(const std::string& override_dir = "") {
        if (!override_dir.empty()) return at(override_dir);
        if (const char* env = std::getenv("DIAGSYS_CACHE_DIR")) return at(env);
        return disabled();
    }

    std::filesystem::path key_path(const std::string& digest, const RangeSpec& range,
                                   const std::string& method) const {
        return dir / "counts" / (digest + "--" + range.tag() + "--" + method + ".json");
    }

    std::optional<CountResult> lookup(const std::string& digest, const RangeSpec& range,
                                      const std::string& method) const {
        if (!enabled) return std::nullopt;
        auto p = key_path(digest, range, method);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (...) {
            return std::nullopt;  // corrupt entries are treated as misses
        }
        CountResult res;
        res.count = parse_i128(doc.at("count").get<std::string>());
        res.system_digest = digest;
        res.range = range;
        res.method = method;
        res.wall_time = doc.at("seconds").get<double>();
        res.from_cache = true;
        return res;
    }

    void store(const CountResult& res) const {
        if (!enabled) return;
        nlohmann::ordered_json doc;
        doc["digest"] = res.system_digest;
        doc["range"] = res.range.tag();
        doc["P"] = res.range.P;
        doc["count"] = to_string(res.count);
        doc["method"] = res.method;
        doc["seconds"] = res.wall_time;
        std::ofstream out(key_path(res.system_digest, res.range, res.method));
        out << doc.dump() << "\n";
    }
};

// count_solutions with cache lookup/store.
inline CountResult cached_count(const AdditiveSystem& sys, const RangeSpec& range,
                                CountMethod method, const CountCache& cache,
                                const CountLimits& lim = {}) {
    std::string digest = system_digest(sys);
    std::string mname = method == CountMethod::brute ? "brute" : "mitm";
    if (auto hit = cache.lookup(digest, range, mname)) return *hit;
    auto res = count_solutions(sys, range, method, lim);
    cache.store(res);
    return res;
}

}  // namespace diagsys
