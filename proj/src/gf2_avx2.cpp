// gf2_avx2.cpp - built with -mavx2 on x86 only

#include "hfl/gf2.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace hfl::gf2 {

namespace {

void xor_row_avx2(Word* dst, const Word* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i) dst[i] ^= src[i];
}

std::size_t first_nonzero_avx2(const Word* row, std::size_t from, std::size_t n) {
    std::size_t i = from;
    for (; i < n && (i & 3); ++i)
        if (row[i]) return i;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
        if (!_mm256_testz_si256(a, a)) {
            for (std::size_t j = i;; ++j)
                if (row[j]) return j;
        }
    }
    for (; i < n; ++i)
        if (row[i]) return i;
    return kNpos;
}

const Kernels kAvx2{"avx2", xor_row_avx2, first_nonzero_avx2};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace hfl::gf2

#else

namespace hfl::gf2 {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace hfl::gf2

#endif
