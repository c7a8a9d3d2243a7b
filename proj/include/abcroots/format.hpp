#pragma once

// Small output helpers shared by the CLI and the hit store. Floating
// display values are always printed with 6 significant digits; big integers
// always as decimal strings.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>

#include "abc_model.hpp"
#include "exact_arith.hpp"

namespace abcroots {

inline std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string iso_timestamp(bool fixed_clock) {
    std::time_t t = 0;
    if (!fixed_clock)
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline const char* name_of(Quality1Status s) {
    switch (s) {
        case Quality1Status::Exact: return "exact";
        case Quality1Status::LowerBoundCertified: return "lower-bound-certified";
        case Quality1Status::Unavailable: return "unavailable";
    }
    return "unavailable";
}

inline const char* name_of(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        case TriState::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace abcroots
