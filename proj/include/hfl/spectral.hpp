#pragma once
// spectral.hpp - tower inference and spectral sequences of filtered complexes

#include "hfl/complex.hpp"

#include <map>
#include <vector>

namespace hfl {

struct TowerProfile {
    std::vector<int> lengths;  // finite towers, sorted
    int open = 0;              // towers still growing at the last delta
    int horizon = 0;           // that last delta; open towers have length >= horizon

    bool operator==(const TowerProfile&) const = default;
    std::string str() const;
};

// ranks[i] is the flattened rank at delta = i + 1.
TowerProfile infer_towers(const std::vector<std::size_t>& ranks, std::size_t factor);
// factor * sum_j min(k_j, delta); open towers count delta.
std::size_t predicted_rank(const TowerProfile& t, int delta, std::size_t factor);

struct FilteredComplex {
    GradedComplex base;
    std::vector<int> level;  // per generator
};

struct SpectralPages {
    // pages[r][degree] = total rank of E^r in that degree, r = 0, 1, ...
    std::vector<std::map<int, std::size_t>> pages;
    std::map<int, std::size_t> infinity;
    std::map<int, std::size_t> total_homology;
};

SpectralPages spectral_sequence(const FilteredComplex& f);

}  // namespace hfl
