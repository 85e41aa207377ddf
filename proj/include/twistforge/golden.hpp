#pragma once

#include <array>
#include <string_view>

namespace twistforge {

struct GoldenEntry {
    std::string_view spec;
    int sigma;
};

// The twelve tabulated signature totals, in table order.
inline constexpr std::array<GoldenEntry, 12> golden_table{{
    {"(0 2 1,1 2 0)", -12},
    {"(0 4 1,1 2 0)", -12},
    {"(0 2 1,1 4 0)", -12},
    {"(0 4 1,1 4 0)", -12},
    {"(1 2 1,1 4 0)", -16},
    {"(0 2 1,1 4 1)", -16},
    {"(0 2 2,1 4 0)", -16},
    {"(0 2 1,1 2 1,1 2 0)", -20},
    {"(0 2 1,1 2 1,1 2 2,1 2 1)", -36},
    {"(2 2 1,1 2 2,1 4 1)", -36},
    {"(3 4 2,1 4 2)", -36},
    {"(1 4 1,1 2 1,1 6 2)", -32},
}};

inline const GoldenEntry* golden_lookup(std::string_view spec) {
    for (auto& e : golden_table)
        if (e.spec == spec) return &e;
    return nullptr;
}

}  // namespace twistforge
