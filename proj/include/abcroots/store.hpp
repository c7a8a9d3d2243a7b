#pragma once

// Append-only hit store: UTF-8, one JSON record per line, big integers as
// decimal strings. A dedup index over (k, s, n) is built when the store is
// opened, so reruns never append the same hit twice.

#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "abc_model.hpp"
#include "format.hpp"
#include "json.hpp"

namespace abcroots {

struct HitRecord {
    Bigint k;
    unsigned long s = 2;
    int n = 0;
    std::optional<Bigint> b_next;
    Bigint d;
    Bigint a, b, c;
    Quality1 q1;
    double q2 = 0;
    bool hit_q2 = false;
    std::string kind;  // which quality the hunt filtered on
    std::string timestamp;
};

inline nlohmann::ordered_json to_json(const HitRecord& h) {
    nlohmann::ordered_json j;
    j["k"] = dec(h.k);
    j["s"] = h.s;
    j["n"] = h.n;
    if (h.b_next)
        j["b_next"] = dec(*h.b_next);
    else
        j["b_next"] = nullptr;
    j["d"] = dec(h.d);
    j["a"] = dec(h.a);
    j["b"] = dec(h.b);
    j["c"] = dec(h.c);
    j["q1_lo"] = fmt6(h.q1.lo);
    j["q1_hi"] = fmt6(h.q1.hi);
    j["q1_status"] = name_of(h.q1.status);
    j["hit_q1"] = name_of(h.q1.hit);
    j["q2"] = fmt6(h.q2);
    j["hit_q2"] = h.hit_q2;
    j["kind"] = h.kind;
    j["timestamp"] = h.timestamp;
    return j;
}

class HitStore {
public:
    // Opening reads any existing records just to rebuild the dedup index.
    explicit HitStore(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_);
        if (!in)
            return;  // fresh store
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("k") || !j.contains("s") || !j.contains("n"))
                throw std::runtime_error("hit store " + path_ + ": corrupt line");
            seen_.insert(key(j["k"].get<std::string>(), j["s"].get<unsigned long>(),
                             j["n"].get<int>()));
        }
    }

    const std::string& path() const { return path_; }
    size_t size() const { return seen_.size(); }

    bool contains(const HitRecord& h) const {
        return seen_.count(key(dec(h.k), h.s, h.n)) > 0;
    }

    // Appends the record unless its (k, s, n) is already present. Returns
    // whether a line was written.
    bool append(const HitRecord& h) {
        const auto k = key(dec(h.k), h.s, h.n);
        if (seen_.count(k))
            return false;
        std::ofstream out(path_, std::ios::app);
        if (!out)
            throw std::runtime_error("hit store " + path_ + ": cannot open for append");
        out << to_json(h).dump() << '\n';
        if (!out)
            throw std::runtime_error("hit store " + path_ + ": write failed");
        seen_.insert(k);
        return true;
    }

private:
    static std::string key(const std::string& k, unsigned long s, int n) {
        return k + "|" + std::to_string(s) + "|" + std::to_string(n);
    }

    std::string path_;
    std::set<std::string> seen_;
};

}  // namespace abcroots
