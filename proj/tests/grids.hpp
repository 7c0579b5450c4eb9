#pragma once
// grids.hpp - the test grids and s values covering every sign region

#include "hfl/grid.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace grids {

inline const char* kUnknot2 = "n=2\nO: 0 1\nX: 1 0\n";
inline const char* kUnknotFree3 = "n=3\nO: 0 1 2\nX: 1 0 -\n";
inline const char* kSplit4 = "n=4\nO: 0 1 2 3\nX: 1 0 3 2\n";
inline const char* kHopf4 = "n=4\nO: 0 1 2 3\nX: 2 3 0 1\n";
inline const char* kHopfFree5 = "n=5\nO: 0 1 2 3 4\nX: 2 3 0 1 -\n";
inline const char* kTrefoil5 = "n=5\nO: 0 1 2 3 4\nX: 2 3 4 0 1\n";
inline const char* kTrefoilFree6 = "n=6\nO: 0 1 2 3 4 5\nX: 2 3 4 0 1 -\n";
inline const char* kHopfFree6 = "n=6\nO: 0 1 2 3 4 5\nX: 2 3 0 1 - -\n";

inline std::vector<std::string> all() {
    return {kUnknot2, kUnknotFree3, kSplit4, kHopf4, kHopfFree5, kTrefoil5, kTrefoilFree6, kHopfFree6};
}

// Per component: -inf, below, inside and above the Alexander range, +inf.
inline std::vector<hfl::ExtendedValue> sign_regions(const hfl::GridDiagram& g, const hfl::GridGenerators& gens) {
    std::vector<std::vector<int>> choices(g.ell);
    for (int i = 0; i < g.ell; ++i) {
        int lo = hfl::kInf, hi = -hfl::kInf;
        for (const auto& a : gens.alex2) {
            lo = std::min(lo, a[i]);
            hi = std::max(hi, a[i]);
        }
        std::set<int> c{-hfl::kInf, lo - 2, (lo + hi) / 2, hi + 2, hfl::kInf};
        for (int v : c)
            if (std::abs(v) >= hfl::kInf || (v - g.offset2[i]) % 2 == 0) choices[i].push_back(v);
            else choices[i].push_back(v + 1);
    }
    std::vector<hfl::ExtendedValue> out{{}};
    for (int i = 0; i < g.ell; ++i) {
        std::vector<hfl::ExtendedValue> next;
        for (const auto& s : out)
            for (int v : choices[i]) {
                auto t = s;
                t.push_back(v);
                next.push_back(t);
            }
        out = next;
    }
    return out;
}

}  // namespace grids
