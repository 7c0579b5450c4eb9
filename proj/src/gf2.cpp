// gf2.cpp - scalar kernels, dispatch, elimination

#include "hfl/gf2.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hfl::gf2 {

namespace {

void xor_row_scalar(Word* dst, const Word* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

std::size_t first_nonzero_scalar(const Word* row, std::size_t from, std::size_t n) {
    for (std::size_t i = from; i < n; ++i)
        if (row[i]) return i;
    return kNpos;
}

const Kernels kScalar{"scalar", xor_row_scalar, first_nonzero_scalar};

const Kernels* detect() {
    const char* env = std::getenv("HFL_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && avx2_kernels()) return avx2_kernels();
#endif
    if (neon_kernels()) return neon_kernels();
    return &kScalar;
}

std::atomic<const Kernels*> g_active{nullptr};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active() {
    const Kernels* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        k = detect();
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void set_active(const Kernels& k) { g_active.store(&k, std::memory_order_release); }

Echelon::Echelon(std::size_t bits, const Kernels& k)
    : bits_(bits), stride_(words_for(bits)), k_(&k), by_col_(bits, -1) {}

std::size_t Echelon::reduce(Word* v) const {
    std::size_t w = 0;
    for (;;) {
        w = k_->first_nonzero(v, w, stride_);
        if (w == kNpos) return kNpos;
        std::size_t c = w * 64 + std::size_t(__builtin_ctzll(v[w]));
        std::int32_t r = by_col_[c];
        if (r < 0) return c;
        k_->xor_row(v, rows_.data() + std::size_t(r) * stride_, stride_);
    }
}

bool Echelon::insert(const Word* v) {
    std::vector<Word> tmp(v, v + stride_);
    std::size_t c = reduce(tmp.data());
    if (c == kNpos) return false;
    by_col_[c] = std::int32_t(pivot_col_.size());
    pivot_col_.push_back(c);
    rows_.insert(rows_.end(), tmp.begin(), tmp.end());
    return true;
}

std::size_t rank(const BitMatrix& m, const Kernels& k) {
    Echelon e(m.cols(), k);
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.dim();
}

std::vector<std::vector<Word>> left_kernel(const BitMatrix& m, const Kernels& k) {
    // Augment each row with a unit tag; pivots are searched only in the
    // left part, so a row that empties there carries a kernel vector.
    const std::size_t n = m.rows(), c = m.cols();
    const std::size_t lw = words_for(c), tw = words_for(n);
    std::vector<Word> rows;
    std::vector<std::int32_t> by_col(c, -1);
    std::vector<std::vector<Word>> out;
    std::vector<Word> v(lw + tw);
    std::int32_t count = 0;
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(v.begin(), v.end(), 0);
        std::memcpy(v.data(), m.row(r), lw * sizeof(Word));
        v[lw + (r >> 6)] |= Word(1) << (r & 63);
        std::size_t w = 0;
        bool independent = false;
        for (;;) {
            w = k.first_nonzero(v.data(), w, lw);
            if (w == kNpos) break;
            std::size_t col = w * 64 + std::size_t(__builtin_ctzll(v[w]));
            std::int32_t p = by_col[col];
            if (p < 0) {
                by_col[col] = count++;
                rows.insert(rows.end(), v.begin(), v.end());
                independent = true;
                break;
            }
            k.xor_row(v.data(), rows.data() + std::size_t(p) * (lw + tw), lw + tw);
        }
        if (!independent) out.emplace_back(v.begin() + lw, v.end());
    }
    return out;
}

}  // namespace hfl::gf2
