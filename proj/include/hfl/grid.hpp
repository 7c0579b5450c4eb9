#pragma once
// grid.hpp - toroidal grid diagrams with free markings and their Floer complexes

#include "hfl/complex.hpp"

#include <string>
#include <vector>

namespace hfl {

// Doubled lattice values; +-kInf stand for +-infinity.
constexpr int kInf = 1 << 20;
using ExtendedValue = std::vector<int>;
std::string half_str(int doubled);
std::string value_str(const ExtendedValue& s);
// Parses "1/2,-inf,3" style lists into doubled values.
ExtendedValue parse_value(const std::string& text);

struct GridDiagram {
    int n = 0;
    std::vector<int> O;  // column -> row
    std::vector<int> X;  // column -> row, -1 when the column has no X

    // Derived by make_grid.
    int ell = 0, q = 0;
    std::vector<int> o_var;   // per column: component of the O, or ell + k for the k-th free marking
    std::vector<int> x_comp;  // per column: component of the X, or -1
    std::vector<int> comp_size;              // O markings per component
    std::vector<std::vector<int>> lk;        // linking numbers, zero diagonal
    std::vector<int> offset2;                // 2 lk(L_i, L - L_i) / 2, i.e. the row sums of lk

    int num_vars() const { return ell + q; }
    TruncatedRing ring(int delta) const { return TruncatedRing{num_vars(), delta}; }
};

GridDiagram make_grid(int n, std::vector<int> O, std::vector<int> X);
GridDiagram parse_grid(const std::string& text);
std::string grid_text(const GridDiagram& g);
// Cyclic translation of the torus by dc columns and dr rows.
GridDiagram translate(const GridDiagram& g, int dc, int dr);

struct GridGenerators {
    std::vector<std::vector<int>> perm;  // column -> row, lexicographic order
    std::vector<int> maslov;
    std::vector<std::vector<int>> alex2;  // doubled, per component
};

struct Rectangle {
    int from = 0, to = 0;
    int left = 0, bottom = 0, width = 0, height = 0;
    std::vector<int> o;  // O count per variable (components, then free markings)
    std::vector<int> x;  // X count per component
};

GridGenerators grid_generators(const GridDiagram& g);
std::vector<Rectangle> empty_rectangles(const GridDiagram& g, const GridGenerators& gens);

// E^i_s for one component; s may be infinite.
int rect_exponent(int a2_from, int a2_to, int s2, int o, int x);
// mu_s in the paper's convention: M - 2 sum max(A_i - s_i, 0), with A_i when s_i = -inf.
int grid_grading(const GridGenerators& gens, int x, const ExtendedValue& s);
void check_value(const GridDiagram& g, const ExtendedValue& s);

GradedComplex grid_complex(const GridDiagram& g, const GridGenerators& gens, const std::vector<Rectangle>& rects,
                           const ExtendedValue& s, int delta);
GradedComplex build_complex(const GridDiagram& g, const ExtendedValue& s, int delta);

// orient[i] is +1 / -1 for components of the oriented sublink, 0 elsewhere.
ExtendedValue p_map(const ExtendedValue& s, const std::vector<int>& orient);
// Diagonal U-power map A(G, s) -> A(G, p(s)).
RMat inclusion_map(const GridDiagram& g, const GridGenerators& gens, const ExtendedValue& s,
                   const std::vector<int>& orient, int delta);

GridDiagram reduce(const GridDiagram& g, const std::vector<int>& orient);
// Drops every row and column through a component in M; comp_map receives
// the new index of each surviving component (-1 for removed ones).
GridDiagram quasi_destabilize(const GridDiagram& g, const std::vector<bool>& in_m, std::vector<int>* comp_map = nullptr);
GradedComplex koszul(const GridDiagram& g, const std::vector<bool>& in_m, int delta);

}  // namespace hfl
