#pragma once
// hyperbox.hpp - hyperboxes of chain complexes, compression, enlargements,
// canonical inclusions and total complexes

#include "hfl/complex.hpp"
#include "hfl/io.hpp"
#include "hfl/songs.hpp"

#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace hfl {

// Vertices are indexed in mixed radix (axis 0 fastest); unit steps eps are
// bit masks over the axes.
struct Hyperbox {
    TruncatedRing ring;
    std::vector<int> size;
    std::vector<GradedComplex> vertex;
    std::map<std::pair<int, Letters>, RMat> maps;  // (source vertex, eps != 0)

    Hyperbox() = default;
    Hyperbox(TruncatedRing r, std::vector<int> size);

    int dim() const { return int(size.size()); }
    int num_vertices() const { return int(vertex.size()); }
    int index(const std::vector<int>& e) const;
    std::vector<int> coords(int v) const;
    // v + eps, or -1 when it leaves the box.
    int shift(int v, Letters eps) const;
    // eps == 0 returns the vertex differential; absent maps are zero.
    RMat map(int v, Letters eps) const;
    void set_map(int v, Letters eps, RMat m);
    void add_map(int v, Letters eps, const RMat& m);

    bool is_cube() const;
    // First (vertex, eps) where the hyperbox relation fails.
    std::optional<std::pair<int, Letters>> violation() const;
    // First (vertex, eps) whose map does not shift grading by |eps| - 1.
    std::optional<std::pair<int, Letters>> degree_violation() const;
    void require_valid() const;
};

std::string eps_str(const std::vector<int>& e);

// The collection A_Z = sum over vertices of D^{zeta(Z)} on the direct sum of
// all vertex complexes; offsets receive the block start of each vertex.
Collection hyperbox_collection(const Hyperbox& h, std::vector<int>* offsets = nullptr);

// Axes with size zero are dropped from the result.
Hyperbox compress(const Hyperbox& h);
Hyperbox enlarge(const Hyperbox& h, int axis, int slot);
GradedComplex total_complex(const Hyperbox& h);

struct HyperboxChainMap {
    Hyperbox source, target;
    std::map<std::pair<int, Letters>, RMat> F;  // eps may be 0

    RMat at(int v, Letters eps) const;
    // The (n+1)-dimensional hyperbox of size (d, 1).
    Hyperbox as_hyperbox() const;
    bool valid() const { return !as_hyperbox().violation(); }
};

HyperboxChainMap compose(const HyperboxChainMap& g, const HyperboxChainMap& f);
Hyperbox canonical_hypercube(const GradedComplex& k, int n);
HyperboxChainMap canonical_inclusion(const Hyperbox& cube);

io::json hyperbox_to_json(const Hyperbox& h);
Hyperbox hyperbox_from_json(const io::json& j);

// Random valid hyperboxes built from chain-map strings, tensor products,
// direct sums, base changes, enlargements and conjugation by homotopies.
struct RandomBoxSpec {
    TruncatedRing ring{1, 2};
    std::vector<int> size;
    int min_gens = 1;       // per vertex complex of a string
    int max_gens = 2;
    int perturbations = 3;  // homotopy conjugations
    bool graded = true;
};

Hyperbox random_hyperbox(std::mt19937_64& rng, const RandomBoxSpec& spec);
// Random complex: direct sum of cones and free generators, then a base change.
GradedComplex random_complex(std::mt19937_64& rng, TruncatedRing r, int max_gens, bool graded, int min_gens = 1);
// Uniform element of the space of degree-k chain maps a -> b.
RMat random_chain_map(std::mt19937_64& rng, const GradedComplex& a, const GradedComplex& b, int k);
// A random invertible matrix and its inverse.
std::pair<RMat, RMat> random_invertible(std::mt19937_64& rng, TruncatedRing r, int n, const std::vector<int>* grading);

}  // namespace hfl
