// lattice.cpp

#include "hfl/lattice.hpp"

#include <cstdlib>
#include <utility>

namespace hfl {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

namespace {

void axpy_row(IVec& dst, const IVec& src, long long k) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += k * src[i];
}

}  // namespace

IMat hermite(const IMat& rows, IMat* transform) {
    IMat a = rows;
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    IMat u(m, IVec(m, 0));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // gcd elimination below row r in column c
        for (;;) {
            std::size_t piv = m;
            for (std::size_t i = r; i < m; ++i)
                if (a[i][c] != 0 && (piv == m || std::llabs(a[i][c]) < std::llabs(a[piv][c]))) piv = i;
            if (piv == m) break;
            std::swap(a[r], a[piv]);
            std::swap(u[r], u[piv]);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (a[i][c] == 0) continue;
                long long q = a[i][c] / a[r][c];
                axpy_row(a[i], a[r], -q);
                axpy_row(u[i], u[r], -q);
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= m || a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (auto& v : a[r]) v = -v;
            for (auto& v : u[r]) v = -v;
        }
        for (std::size_t i = 0; i < r; ++i) {
            long long q = floor_div(a[i][c], a[r][c]);
            if (q == 0) continue;
            axpy_row(a[i], a[r], -q);
            axpy_row(u[i], u[r], -q);
        }
        ++r;
    }
    if (transform) *transform = u;
    a.resize(r);
    return a;
}

IVec reduce_mod(const IMat& h, IVec v) {
    for (const IVec& row : h) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        long long q = floor_div(v[c], row[c]);
        if (q) axpy_row(v, row, -q);
    }
    return v;
}

IMat integer_kernel(const IMat& a, int n) {
    // Column operations on A are row operations on A^T; the transform rows
    // matching zero rows of the Hermite form span the kernel.
    IMat at(n, IVec(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < n; ++j) at[j][i] = a[i][j];
    IMat u;
    IMat h = a.empty() ? IMat{} : hermite(at, &u);
    if (a.empty()) {
        IMat id(n, IVec(n, 0));
        for (int i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }
    IMat out(u.begin() + long(h.size()), u.end());
    return hermite(out);
}

std::optional<IVec> solve_rows(const IMat& rows, const IVec& target) {
    IMat u;
    IMat h = hermite(rows, &u);
    IVec rest = target;
    IVec coef(h.size(), 0);
    for (std::size_t k = 0; k < h.size(); ++k) {
        std::size_t c = 0;
        while (h[k][c] == 0) ++c;
        if (rest[c] % h[k][c] != 0) return std::nullopt;
        coef[k] = rest[c] / h[k][c];
        axpy_row(rest, h[k], -coef[k]);
    }
    for (long long v : rest)
        if (v != 0) return std::nullopt;
    IVec a(rows.size(), 0);
    for (std::size_t k = 0; k < h.size(); ++k)
        for (std::size_t i = 0; i < rows.size(); ++i) a[i] += coef[k] * u[k][i];
    return a;
}

long long determinant(const IMat& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IMat minor;
        for (std::size_t r = 1; r < n; ++r) {
            IVec row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        long long sub = determinant(minor);
        det += (c % 2 ? -1 : 1) * m[0][c] * sub;
    }
    return det;
}

IMat adjugate(const IMat& m) {
    const std::size_t n = m.size();
    IMat adj(n, IVec(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IMat minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                IVec row;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j) row.push_back(m[r][k]);
                minor.push_back(row);
            }
            adj[j][i] = ((i + j) % 2 ? -1 : 1) * determinant(minor);
        }
    return adj;
}

}  // namespace hfl
