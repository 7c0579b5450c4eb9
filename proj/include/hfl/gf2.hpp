#pragma once
// gf2.hpp - dense bit-packed GF(2) elimination

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hfl::gf2 {

using Word = std::uint64_t;
constexpr std::size_t kNpos = ~std::size_t(0);

// The two hot loops of elimination. Each backend fills this table.
struct Kernels {
    const char* name;
    void (*xor_row)(Word* dst, const Word* src, std::size_t nwords);
    // index of the first nonzero word in [from, nwords), or kNpos
    std::size_t (*first_nonzero)(const Word* row, std::size_t from, std::size_t nwords);
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when not compiled in
const Kernels* neon_kernels();  // nullptr when not compiled in

// Chosen once at startup: AVX2 if the CPU has it, NEON on aarch64,
// otherwise scalar. HFL_SIMD=scalar in the environment forces scalar.
const Kernels& active();
void set_active(const Kernels& k);

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }
    Word* row(std::size_t r) { return data_.data() + r * stride_; }
    const Word* row(std::size_t r) const { return data_.data() + r * stride_; }
    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= Word(1) << (c & 63); }
    void flip(std::size_t r, std::size_t c) { row(r)[c >> 6] ^= Word(1) << (c & 63); }

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<Word> data_;
};

// Incremental row echelon form keyed by lowest set bit.
class Echelon {
public:
    explicit Echelon(std::size_t bits, const Kernels& k = active());
    // Reduce v in place against the stored pivots; returns its pivot bit or kNpos.
    std::size_t reduce(Word* v) const;
    // Returns true when v was independent (and stores it).
    bool insert(const Word* v);
    std::size_t dim() const { return pivot_col_.size(); }
    std::size_t stride() const { return stride_; }

private:
    std::size_t bits_, stride_;
    const Kernels* k_;
    std::vector<Word> rows_;
    std::vector<std::size_t> pivot_col_;
    std::vector<std::int32_t> by_col_;
};

std::size_t rank(const BitMatrix& m, const Kernels& k = active());
// Basis of {x : sum_i x_i * row_i = 0}, each of length m.rows() bits.
std::vector<std::vector<Word>> left_kernel(const BitMatrix& m, const Kernels& k = active());

}  // namespace hfl::gf2
