// gf2_neon.cpp

#include "hfl/gf2.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace hfl::gf2 {

namespace {

void xor_row_neon(Word* dst, const Word* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
    for (; i < n; ++i) dst[i] ^= src[i];
}

std::size_t first_nonzero_neon(const Word* row, std::size_t from, std::size_t n) {
    std::size_t i = from;
    if ((i & 1) && i < n) {
        if (row[i]) return i;
        ++i;
    }
    for (; i + 2 <= n; i += 2) {
        uint64x2_t a = vld1q_u64(row + i);
        if (vmaxvq_u32(vreinterpretq_u32_u64(a))) return row[i] ? i : i + 1;
    }
    for (; i < n; ++i)
        if (row[i]) return i;
    return kNpos;
}

const Kernels kNeon{"neon", xor_row_neon, first_nonzero_neon};

}  // namespace

const Kernels* neon_kernels() { return &kNeon; }

}  // namespace hfl::gf2

#else

namespace hfl::gf2 {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace hfl::gf2

#endif
