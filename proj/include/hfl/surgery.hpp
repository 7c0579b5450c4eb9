#pragma once
// surgery.hpp - complete-system models, the truncated surgery complex and its homology

#include "hfl/complex.hpp"
#include "hfl/grid.hpp"
#include "hfl/hyperbox.hpp"
#include "hfl/io.hpp"
#include "hfl/lattice.hpp"
#include "hfl/spectral.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace hfl {

struct Framing {
    std::vector<std::vector<int>> c;  // c[i][i] = lambda_i, c[i][j] = linking numbers

    int ell() const { return int(c.size()); }
    long long det() const;
    bool nondegenerate() const { return det() != 0; }
    IMat rows() const;
    std::string str() const;
};

// "a b; b c"
Framing parse_framing(const std::string& text);

// Doubled points of H(L); lk_row_sums gives the parity offsets.
using Point = std::vector<int>;

// orient[i] = +1 / -1 on the oriented sublink, 0 elsewhere.
// psi drops the coordinates in the sublink and shifts the others by -lk(L_i, N)/2.
Point psi_point(const Point& s, const std::vector<int>& orient, const std::vector<std::vector<int>>& lk);
// Sum of the framing rows over components oriented against L (plain integers).
std::vector<int> lambda_sum(const Framing& f, const std::vector<int>& orient);

// gcd over an integral basis v of H(L,Lambda)^perp of 2 s.v, for doubled s.
long long d_of_u(const Framing& f, const Point& s);
// Lattice coefficients a with s = s0 + sum a_i Lambda_i; throws if s is not in the class of s0.
IVec class_coefficients(const Framing& f, const Point& s, const Point& s0);
// sum 2 a_i s0_i + sum a_i a_j c_ij, reduced into [0, d) when d > 0.
long long nu(const Framing& f, const Point& s, const Point& s0);
// Canonical integer vector of the class of s modulo H(L, Lambda).
IVec spinc_key(const Framing& f, const Point& s, const std::vector<int>& offset2);

// One generator complex per sublink L - M, indexed by the bit mask of surviving components.
struct ModelArrow {
    int from = 0, to = 0;
    std::vector<int> o;  // per variable (components, then free markings)
    std::vector<int> x;  // per component
};

struct SublinkData {
    std::vector<std::string> names;
    std::vector<std::vector<int>> alex2;  // per generator, per component (removed ones unused)
    std::vector<int> maslov;
    std::vector<ModelArrow> arrows;
    int size() const { return int(names.size()); }
};

// Sparse matrix with constant monomials, independent of the truncation.
struct MonoEntry {
    int from = 0, to = 0;
    std::vector<int> exp;  // per variable
};
using MonoMatrix = std::vector<MonoEntry>;

struct SystemModel {
    std::string name;
    int ell = 0, q = 0;
    std::vector<std::vector<int>> lk;
    std::vector<SublinkData> sub;  // size 2^ell, by surviving mask
    // (surviving mask S, sublink mask N, mask of negatively oriented in N).
    // An absent key means the identity on generators.
    std::map<std::tuple<int, int, int>, MonoMatrix> destab;
    // Crossing a positive face of a folded region along surviving component k
    // of the sublink S: (S, k). Absent means identity.
    std::map<std::pair<int, int>, MonoMatrix> fold;
    Framing default_framing;

    int num_vars() const { return ell + q; }
    int full() const { return (1 << ell) - 1; }
    std::vector<int> offset2() const;  // row sums of lk
    void validate() const;
};

SystemModel unknot_model();
SystemModel hopf_model();
io::json model_to_json(const SystemModel& m);
SystemModel model_from_json(const io::json& j);

// Sublink coordinates of the point s at the vertex with removed mask eps.
Point sublink_point(const SystemModel& m, int eps, const Point& s);
// A(H^{L-M}, t) for the surviving mask S; t has ell entries, only those in S are read.
GradedComplex sublink_complex(const SystemModel& m, int S, const Point& t, int delta);
int sublink_maslov(const SystemModel& m, int S, const Point& t, int x);

// Phi = D o I from the S complex at t to the S - N complex at psi(t).
struct PhiMap {
    RMat map;
    Point target;  // psi(t)
    int target_mask = 0;
};
PhiMap phi_map(const SystemModel& m, int S, const std::vector<int>& orient, const Point& t, int delta);
// The inclusion U-powers alone, on the S complex.
RMat inclusion_powers(const SystemModel& m, int S, const std::vector<int>& orient, const Point& t, int delta);

enum class Truncation { KnotB, Combined, Folded, VerticalOnly };
Truncation parse_truncation(const std::string& s);
std::string truncation_name(Truncation t);

struct SurgeryOptions {
    Truncation mode = Truncation::Folded;
    int b = 0;               // 0 picks the default
    std::vector<int> m;      // per component; empty picks the default
    int delta = 1;
    int build_delta = 0;     // truncation of the assembled complex; 0 means 2 delta
};

struct SurgeryComplex {
    GradedComplex complex;                      // over the build truncation
    std::vector<std::tuple<int, Point, int>> index;  // (eps, s, generator)
    std::vector<int> spinc;                     // class id per generator
    std::vector<Point> reps;                    // per class
    std::vector<long long> d;                   // per class
    std::vector<int> m;                         // the m_i used, if any
    int b = 0;
    int delta = 1;
    Truncation mode = Truncation::Folded;
    std::string orientation;                    // knot_b: "quotient" or "subcomplex"
    int crossovers = 0;
};

int default_b(const SystemModel& model, const Framing& f);
std::vector<int> default_m(const SystemModel& model, const Framing& f, int b);

SurgeryComplex assemble(const SystemModel& model, const Framing& f, const SurgeryOptions& opt);

struct ClassHomology {
    Point rep;
    long long d = 0;
    bool graded = true;
    std::map<int, std::size_t> raw, stable;
};

std::vector<ClassHomology> surgery_homology(const SurgeryComplex& sc);

// Violations found by the runtime checks on an assembled complex.
struct SurgeryReport {
    bool square_zero = true;
    bool spinc_preserved = true;
    int grading_defects = 0;
    std::vector<std::string> problems;
};
SurgeryReport check_complex(const SurgeryComplex& sc);

// Edge maps Phi^{+L_i} at s_i > b and Phi^{-L_i} at s_i < -b must be quasi-isomorphisms.
// Returns descriptions of the sample points where the cone is not acyclic.
std::vector<std::string> edge_witnesses(const SystemModel& model, int b, int delta);

// The 2-cube of Phi^{+L_1}, Phi^{+L_2}, Phi^{+L_1+L_2} at one point, as a hyperbox.
Hyperbox positive_cube(const SystemModel& model, const Point& s, int delta);

}  // namespace hfl
