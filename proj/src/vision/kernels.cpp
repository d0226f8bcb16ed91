// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/vision/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace edgebench::vision::kernels {

void normalize_u8_scalar(const uint8_t* src, float* dst, size_t count) {
    for (size_t i = 0; i < count; ++i) {
        dst[i] = static_cast<float>(src[i]) / 255.0f;
    }
}

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}
#endif

#if defined(__aarch64__)
void normalize_u8_neon(const uint8_t* src, float* dst, size_t count) {
    const float32x4_t denom = vdupq_n_f32(255.0f);
    size_t i = 0;
    for (; i + 16 <= count; i += 16) {
        const uint8x16_t bytes = vld1q_u8(src + i);
        const uint16x8_t lo = vmovl_u8(vget_low_u8(bytes));
        const uint16x8_t hi = vmovl_u8(vget_high_u8(bytes));
        const uint32x4_t w0 = vmovl_u16(vget_low_u16(lo));
        const uint32x4_t w1 = vmovl_u16(vget_high_u16(lo));
        const uint32x4_t w2 = vmovl_u16(vget_low_u16(hi));
        const uint32x4_t w3 = vmovl_u16(vget_high_u16(hi));
        vst1q_f32(dst + i + 0, vdivq_f32(vcvtq_f32_u32(w0), denom));
        vst1q_f32(dst + i + 4, vdivq_f32(vcvtq_f32_u32(w1), denom));
        vst1q_f32(dst + i + 8, vdivq_f32(vcvtq_f32_u32(w2), denom));
        vst1q_f32(dst + i + 12, vdivq_f32(vcvtq_f32_u32(w3), denom));
    }
    normalize_u8_scalar(src + i, dst + i, count - i);
}
#endif

NormalizeFn normalize_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return normalize_u8_avx2;
#elif defined(__aarch64__)
    return normalize_u8_neon;
#endif
    return normalize_u8_scalar;
}

const char* normalize_kernel_name() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return "avx2";
#elif defined(__aarch64__)
    return "neon";
#endif
    return "scalar";
}

}  // namespace edgebench::vision::kernels
