#pragma once

// Diagonal additive systems: sum_j c_ij x_j^{d_i} = 0 for i = 1..r.
// Representation, text/JSON parsing, canonical serialization, content digest.
//
// Text format: optional header "r | s", one equation per line or
// ';'-separated record, "d: c_1 c_2 ... c_s", '#' starts a comment.
// JSON mirror: {"degrees": [...], "coeffs": [[...]]}.

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "common.hpp"

namespace diagsys {

struct AdditiveSystem {
    int var_count = 0;                    // s
    int eq_count = 0;                     // r
    std::vector<int> degrees;             // d_1 >= ... >= d_r
    std::vector<std::vector<i64>> coeffs; // r x s, all nonzero

    void validate() const {
        if (var_count < 1 || eq_count < 1)
            throw std::invalid_argument("system needs s >= 1 and r >= 1");
        if (int(degrees.size()) != eq_count || int(coeffs.size()) != eq_count)
            throw std::invalid_argument("row count mismatch");
        for (int i = 0; i < eq_count; ++i) {
            if (degrees[i] < 1) throw std::invalid_argument("non-positive degree");
            if (i > 0 && degrees[i] > degrees[i - 1])
                throw std::invalid_argument("degrees not sorted non-increasing");
            if (int(coeffs[i].size()) != var_count)
                throw std::invalid_argument("inconsistent column count");
            for (int j = 0; j < var_count; ++j)
                if (coeffs[i][j] == 0)
                    throw std::invalid_argument("zero coefficient at (" + std::to_string(i + 1) +
                                                "," + std::to_string(j + 1) + ")");
        }
    }

    // Builds a system from rows in arbitrary order; rows are stably sorted by
    // degree non-increasing.  Returns the system and the applied permutation:
    // order[i] = index of equation i (sorted) in the input.
    static std::pair<AdditiveSystem, std::vector<int>> make(std::vector<int> degs,
                                                            std::vector<std::vector<i64>> cf) {
        if (degs.size() != cf.size()) throw std::invalid_argument("row count mismatch");
        std::vector<int> order(degs.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return degs[a] > degs[b]; });
        AdditiveSystem sys;
        sys.eq_count = int(degs.size());
        sys.var_count = cf.empty() ? 0 : int(cf[0].size());
        for (int i : order) {
            sys.degrees.push_back(degs[i]);
            sys.coeffs.push_back(std::move(cf[i]));
        }
        sys.validate();
        return {std::move(sys), std::move(order)};
    }
};

struct ParseResult {
    AdditiveSystem system;
    std::vector<int> input_order;  // sorted row i came from input row input_order[i]
    std::vector<std::string> warnings;
};

namespace detail {

inline bool parse_int_token(const std::string& tok, i64& out) {
    if (tok.empty()) return false;
    size_t pos = 0;
    bool neg = false;
    if (tok[0] == '-' || tok[0] == '+') {
        neg = tok[0] == '-';
        pos = 1;
    }
    if (pos == tok.size()) return false;
    i64 v = 0;
    for (; pos < tok.size(); ++pos) {
        if (tok[pos] < '0' || tok[pos] > '9') return false;
        if (v > (std::numeric_limits<i64>::max() - 9) / 10) return false;
        v = v * 10 + (tok[pos] - '0');
    }
    out = neg ? -v : v;
    return true;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

inline ParseResult parse_system_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(1, std::string("bad JSON: ") + e.what());
    }
    if (!doc.contains("degrees") || !doc.contains("coeffs"))
        throw parse_error(1, "JSON system needs \"degrees\" and \"coeffs\"");
    std::vector<int> degs = doc["degrees"].get<std::vector<int>>();
    std::vector<std::vector<i64>> cf = doc["coeffs"].get<std::vector<std::vector<i64>>>();
    if (degs.size() != cf.size()) throw parse_error(1, "degrees/coeffs row mismatch");
    ParseResult res;
    try {
        auto [sys, order] = AdditiveSystem::make(std::move(degs), std::move(cf));
        res.system = std::move(sys);
        res.input_order = std::move(order);
    } catch (const std::invalid_argument& e) {
        throw parse_error(1, e.what());
    }
    for (int d : res.system.degrees)
        if (d == 1) {
            res.warnings.push_back("degree-1 equation accepted; most bounds assume d >= 2");
            break;
        }
    return res;
}

inline ParseResult parse_system(const std::string& text) {
    {
        size_t a = text.find_first_not_of(" \t\r\n");
        if (a != std::string::npos && text[a] == '{') return parse_system_json(text);
    }

    std::optional<i64> header_r, header_s;
    bool saw_record = false;
    std::vector<int> degs;
    std::vector<std::vector<i64>> cf;
    std::vector<int> record_lines;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        // records on one line are separated by ';'
        size_t start = 0;
        while (start <= raw.size()) {
            size_t sep = raw.find(';', start);
            std::string rec = detail::trim(
                raw.substr(start, sep == std::string::npos ? std::string::npos : sep - start));
            start = (sep == std::string::npos) ? raw.size() + 1 : sep + 1;
            if (rec.empty()) continue;

            if (auto bar = rec.find('|'); bar != std::string::npos) {
                if (saw_record || header_r)
                    throw parse_error(line_no, "header \"r | s\" must come first");
                std::string left = detail::trim(rec.substr(0, bar));
                std::string right = detail::trim(rec.substr(bar + 1));
                i64 r = 0;
                if (!detail::parse_int_token(left, r) || r < 1)
                    throw parse_error(line_no, "malformed header, expected \"r | s\"");
                header_r = r;
                if (right.empty()) continue;
                if (right.find(':') == std::string::npos) {
                    i64 s = 0;
                    if (!detail::parse_int_token(right, s) || s < 1)
                        throw parse_error(line_no, "malformed header, expected \"r | s\"");
                    header_s = s;
                    continue;
                }
                rec = right;  // header followed by the first equation
            }

            auto colon = rec.find(':');
            if (colon == std::string::npos)
                throw parse_error(line_no, "malformed line, expected \"d: c_1 ... c_s\"");
            i64 d = 0;
            if (!detail::parse_int_token(detail::trim(rec.substr(0, colon)), d))
                throw parse_error(line_no, "malformed degree");
            if (d < 1) throw parse_error(line_no, "non-positive degree " + std::to_string(d));
            std::vector<i64> row;
            for (const auto& tok : detail::split_ws(rec.substr(colon + 1))) {
                i64 c = 0;
                if (!detail::parse_int_token(tok, c))
                    throw parse_error(line_no, "malformed coefficient \"" + tok + "\"");
                row.push_back(c);
            }
            if (row.empty()) throw parse_error(line_no, "equation with no coefficients");
            int i = int(degs.size()) + 1;
            for (size_t j = 0; j < row.size(); ++j)
                if (row[j] == 0)
                    throw parse_error(line_no, "zero coefficient at (" + std::to_string(i) + "," +
                                                   std::to_string(j + 1) + ")");
            if (!cf.empty() && row.size() != cf[0].size())
                throw parse_error(line_no, "inconsistent column count (got " +
                                               std::to_string(row.size()) + ", expected " +
                                               std::to_string(cf[0].size()) + ")");
            if (header_s && i64(row.size()) != *header_s)
                throw parse_error(line_no, "inconsistent column count vs header");
            degs.push_back(int(d));
            cf.push_back(std::move(row));
            record_lines.push_back(line_no);
            saw_record = true;
        }
    }

    if (degs.empty()) throw parse_error(line_no, "no equations found");
    if (header_r && i64(degs.size()) != *header_r)
        throw parse_error(record_lines.back(), "equation count " + std::to_string(degs.size()) +
                                                   " does not match header r=" +
                                                   std::to_string(*header_r));
    ParseResult res;
    try {
        auto [sys, order] = AdditiveSystem::make(std::move(degs), std::move(cf));
        res.system = std::move(sys);
        res.input_order = std::move(order);
    } catch (const std::invalid_argument& e) {
        throw parse_error(record_lines.back(), e.what());
    }
    for (int d : res.system.degrees)
        if (d == 1) {
            res.warnings.push_back("degree-1 equation accepted; most bounds assume d >= 2");
            break;
        }
    return res;
}

// Canonical form: header plus equations in the stored (degree-descending) order.
inline std::string serialize_text(const AdditiveSystem& sys) {
    std::ostringstream out;
    out << sys.eq_count << " | " << sys.var_count << "\n";
    for (int i = 0; i < sys.eq_count; ++i) {
        out << sys.degrees[i] << ":";
        for (i64 c : sys.coeffs[i]) out << " " << c;
        out << "\n";
    }
    return out.str();
}

inline std::string serialize_json(const AdditiveSystem& sys) {
    nlohmann::ordered_json doc;
    doc["degrees"] = sys.degrees;
    doc["coeffs"] = sys.coeffs;
    return doc.dump();
}

namespace detail {
inline u64 fnv1a64(const std::string& data, u64 basis) {
    u64 h = basis;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace detail

// Content hash of the canonical serialization (32 hex chars).
inline std::string system_digest(const AdditiveSystem& sys) {
    std::string canon = serialize_text(sys);
    u64 h1 = detail::fnv1a64(canon, 0xcbf29ce484222325ULL);
    u64 h2 = detail::fnv1a64(canon, 0x84222325cbf29ce4ULL);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", h1, h2);
    return std::string(buf);
}

inline AdditiveSystem restrict_columns(const AdditiveSystem& sys, const std::vector<int>& cols) {
    if (cols.empty()) throw std::invalid_argument("empty column selection");
    AdditiveSystem out;
    out.eq_count = sys.eq_count;
    out.var_count = int(cols.size());
    out.degrees = sys.degrees;
    out.coeffs.resize(size_t(sys.eq_count));
    for (int i = 0; i < sys.eq_count; ++i)
        for (int j : cols) out.coeffs[size_t(i)].push_back(sys.coeffs[size_t(i)].at(size_t(j)));
    out.validate();
    return out;
}

inline AdditiveSystem scale_row(AdditiveSystem sys, int row, i64 lambda) {
    if (lambda == 0) throw std::invalid_argument("zero row scale");
    for (auto& c : sys.coeffs.at(size_t(row))) c *= lambda;
    return sys;
}

}  // namespace diagsys
