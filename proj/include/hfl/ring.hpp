#pragma once
// ring.hpp - F2[U_1..U_p]/(U_i^delta) and sparse matrices over it

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hfl {

// Exponent vectors are packed one byte per variable.
using Mono = std::uint64_t;
constexpr int kMaxVars = 8;
constexpr int kMaxDelta = 64;

struct TruncatedRing {
    int p = 0;
    int delta = 1;

    bool operator==(const TruncatedRing&) const = default;

    int exp(Mono m, int i) const { return int((m >> (8 * i)) & 0xff); }
    static Mono unit(int i, int e = 1) { return Mono(e) << (8 * i); }
    bool alive(Mono m) const;
    int degree(Mono m) const;
    // Number of monomials surviving truncation: delta^p.
    std::size_t basis_size() const;
    Mono basis_mono(std::size_t idx) const;
    std::size_t basis_index(Mono m) const;
    void check() const;
};

class RingElement {
public:
    RingElement() = default;
    explicit RingElement(TruncatedRing r) : ring_(r) {}
    RingElement(TruncatedRing r, std::vector<Mono> terms);

    static RingElement one(TruncatedRing r) { return RingElement(r, {Mono(0)}); }
    static RingElement monomial(TruncatedRing r, Mono m);
    static RingElement var(TruncatedRing r, int i, int e = 1) { return monomial(r, TruncatedRing::unit(i, e)); }

    const TruncatedRing& ring() const { return ring_; }
    const std::vector<Mono>& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0] == 0; }

    RingElement& operator+=(const RingElement& o);
    RingElement operator+(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Reduce into a smaller truncation (a ring homomorphism when delta shrinks).
    RingElement truncate(TruncatedRing r) const;
    std::string str() const;

private:
    TruncatedRing ring_;
    std::vector<Mono> terms_;  // sorted, no repeats
};

// F2-linear toggles on sorted monomial lists.
void poly_add(std::vector<Mono>& a, const std::vector<Mono>& b);
std::vector<Mono> poly_mul(const TruncatedRing& r, const std::vector<Mono>& a, const std::vector<Mono>& b);

// Sparse column-major matrix; entry (row, col) maps basis col of the
// source to basis row of the target.
class RMat {
public:
    struct Entry {
        int row;
        RingElement val;
    };

    RMat() = default;
    RMat(TruncatedRing r, int rows, int cols) : ring_(r), rows_(rows), cols_(cols), col_(cols) {}
    static RMat identity(TruncatedRing r, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const TruncatedRing& ring() const { return ring_; }
    const std::vector<Entry>& col(int c) const { return col_[c]; }

    RingElement at(int r, int c) const;
    void add(int r, int c, const RingElement& v);
    void add_mono(int r, int c, Mono m);
    bool zero() const;
    std::size_t nnz() const;

    RMat operator*(const RMat& o) const;
    RMat operator+(const RMat& o) const;
    RMat& operator+=(const RMat& o);
    bool operator==(const RMat& o) const;
    bool operator!=(const RMat& o) const { return !(*this == o); }

    RMat block(int r0, int nr, int c0, int nc) const;
    void place(const RMat& m, int r0, int c0);
    RMat truncate(TruncatedRing r) const;
    // First nonzero (row, col) in column-major order, or (-1,-1).
    std::pair<int, int> first_nonzero() const;

private:
    TruncatedRing ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<Entry>> col_;  // each sorted by row
};

}  // namespace hfl
