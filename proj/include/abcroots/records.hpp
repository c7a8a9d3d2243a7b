#pragma once

// The bundled table of published record hits and the regression over it:
// exact balance of each a + b = c, and a bounded search linking each triple
// back to a resulting equation of its claimed root. Table entries mark
// which checks gate the regression; the rest are report-only.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "abc_model.hpp"
#include "cf_engine.hpp"
#include "json.hpp"

namespace abcroots {

struct FactorTerm {
    Bigint base;
    unsigned long exp = 1;
};

struct RecordSpec {
    std::string label;
    Bigint root_k;
    unsigned long root_s = 2;
    std::vector<FactorTerm> a, b, c;  // a + b = c, sides as factored products
    bool assert_balance = false;
    std::optional<int> assert_link_n;
};

enum class Balance { Verified, Mismatch };
enum class Linkage { LinkedAtN, NotLinked };

struct RecordEntry {
    RecordSpec spec;
    Bigint a, b, c;  // evaluated sides
    Balance balance = Balance::Mismatch;
    Linkage linkage = Linkage::NotLinked;
    int link_n = -1;
    bool gate_ok = true;  // all checks the entry asserts passed
};

inline Bigint eval_terms(const std::vector<FactorTerm>& terms) {
    Bigint v = 1;
    for (const auto& t : terms)
        v *= ipow(t.base, t.exp);
    return v;
}

namespace detail {

inline Bigint json_bigint(const nlohmann::json& j) {
    if (j.is_string())
        return Bigint(j.get<std::string>());
    return Bigint(j.get<long>());
}

inline std::vector<FactorTerm> json_terms(const nlohmann::json& j) {
    std::vector<FactorTerm> out;
    for (const auto& t : j)
        out.push_back({json_bigint(t.at(0)), t.at(1).get<unsigned long>()});
    return out;
}

}  // namespace detail

// One JSON object per line; missing or malformed files are configuration
// errors.
inline std::vector<RecordSpec> load_record_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("record table not found: " + path);
    std::vector<RecordSpec> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw std::runtime_error("record table " + path + ":" + std::to_string(lineno) +
                                     ": " + ex.what());
        }
        RecordSpec r;
        r.label = j.at("label").get<std::string>();
        r.root_k = detail::json_bigint(j.at("root_k"));
        r.root_s = j.at("root_s").get<unsigned long>();
        r.a = detail::json_terms(j.at("a"));
        r.b = detail::json_terms(j.at("b"));
        r.c = detail::json_terms(j.at("c"));
        r.assert_balance = j.value("assert_balance", false);
        if (j.contains("assert_link_n"))
            r.assert_link_n = j.at("assert_link_n").get<int>();
        out.push_back(std::move(r));
    }
    if (out.empty())
        throw std::runtime_error("record table is empty: " + path);
    return out;
}

// Does the triple show up among the resulting equations of the claimed root
// within link_depth convergents? Compared as an unordered triple; the
// table's addend order is presentation, not substance.
inline std::optional<int> find_linkage(const RecordSpec& spec, const Bigint& a, const Bigint& b,
                                       const Bigint& c, int link_depth) {
    RootTarget root{spec.root_k, spec.root_s};
    try {
        validate(root);
    } catch (const std::exception&) {
        return std::nullopt;  // claimed root is not expandable
    }
    Bigint lo = std::min(a, b), hi = std::max(a, b);
    Expander ex(root);
    for (int n = 0; n < link_depth; ++n) {
        const auto e = resulting_equation(root, ex.next());
        if (e.c == c && std::min(e.a, e.b) == lo && std::max(e.a, e.b) == hi)
            return n;
    }
    return std::nullopt;
}

inline std::vector<RecordEntry> records_regression(const std::vector<RecordSpec>& table,
                                                   int link_depth = 50) {
    std::vector<RecordEntry> out;
    for (const auto& spec : table) {
        RecordEntry e;
        e.spec = spec;
        e.a = eval_terms(spec.a);
        e.b = eval_terms(spec.b);
        e.c = eval_terms(spec.c);
        e.balance = (e.a + e.b == e.c) ? Balance::Verified : Balance::Mismatch;
        if (const auto n = find_linkage(spec, e.a, e.b, e.c, link_depth)) {
            e.linkage = Linkage::LinkedAtN;
            e.link_n = *n;
        }
        if (spec.assert_balance && e.balance != Balance::Verified)
            e.gate_ok = false;
        if (spec.assert_link_n &&
            (e.linkage != Linkage::LinkedAtN || e.link_n != *spec.assert_link_n))
            e.gate_ok = false;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace abcroots
