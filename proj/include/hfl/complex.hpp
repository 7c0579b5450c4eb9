#pragma once
// complex.hpp - finite free complexes over a truncated ring, flattening, homology

#include "hfl/gf2.hpp"
#include "hfl/ring.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hfl {

struct GradedComplex {
    TruncatedRing ring;
    std::vector<int> grading;        // one per generator
    std::vector<std::string> names;  // optional, same length or empty
    bool graded = true;
    RMat d;                          // (target, source)

    GradedComplex() = default;
    GradedComplex(TruncatedRing r, int n) : ring(r), grading(n, 0), d(r, n, n) {}

    int size() const { return int(grading.size()); }
    std::string name(int i) const { return names.empty() ? "g" + std::to_string(i) : names[i]; }

    // (source, target) of a nonzero entry of d∘d, if any.
    std::optional<std::pair<int, int>> square_defect() const;
    void require_square_zero() const;
    // (source, target) of an entry whose degree drop is not exactly one.
    std::optional<std::pair<int, int>> grading_defect() const;
    GradedComplex truncate(int delta) const;
    GradedComplex restrict_to(const std::vector<int>& gens) const;
};

// Basis generator ⊗ monomial, index g * ring.basis_size() + basis_index(m).
struct FlatComplex {
    std::size_t dim = 0;
    bool graded = true;
    std::vector<int> grading;
    std::vector<std::vector<std::size_t>> image;  // sorted targets of each basis vector
};

FlatComplex flatten(const GradedComplex& c);

// Per-degree ranks of a flat complex. Ungraded complexes report one key 0.
std::map<int, std::size_t> homology_ranks(const FlatComplex& f);
std::map<int, std::size_t> homology_ranks(const GradedComplex& c);
std::size_t total(const std::map<int, std::size_t>& ranks);

// dim(pi Z(c2) + B(c_delta)) - dim B(c_delta) per degree, where c2 is the
// same complex at a larger truncation and pi the projection to delta.
std::map<int, std::size_t> stable_ranks(const GradedComplex& c2, int delta);

// Gaussian elimination over the ring along entries equal to 1. Returns a
// homotopy equivalent complex; kept receives the surviving generator ids.
GradedComplex cancel_units(const GradedComplex& c, std::vector<int>* kept = nullptr);

// Connected components of the differential graph, each sorted.
std::vector<std::vector<int>> components(const GradedComplex& c);

// Mapping cone of a single ring element on one generator: R --a--> R.
GradedComplex cone(TruncatedRing r, const RingElement& a);
GradedComplex direct_sum(const GradedComplex& a, const GradedComplex& b);
GradedComplex tensor(const GradedComplex& a, const GradedComplex& b);

}  // namespace hfl
