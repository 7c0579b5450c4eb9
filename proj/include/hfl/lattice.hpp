#pragma once
// lattice.hpp - small integer lattices: Hermite form, kernels, class reduction

#include <optional>
#include <vector>

namespace hfl {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;  // row major

long long floor_div(long long a, long long b);

// Row Hermite form of the lattice spanned by the rows: nonzero rows only,
// positive pivots strictly increasing in column, entries above a pivot in
// [0, pivot). If transform is given it receives U with U * rows = [H; 0].
IMat hermite(const IMat& rows, IMat* transform = nullptr);

// Canonical representative of v modulo the row lattice of a Hermite form.
IVec reduce_mod(const IMat& h, IVec v);

// Basis of {v : A v = 0} over the integers (A is rows x n).
IMat integer_kernel(const IMat& a, int n);

// Integer a with sum_i a_i rows_i = target, if any.
std::optional<IVec> solve_rows(const IMat& rows, const IVec& target);

long long determinant(const IMat& m);
// adj(m) with adj(m) * m = det(m) * I.
IMat adjugate(const IMat& m);

}  // namespace hfl
