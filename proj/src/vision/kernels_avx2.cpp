// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2; callers reach this only after the runtime
// capability check in normalize_kernel().

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "edgebench/vision/kernels.hpp"

namespace edgebench::vision::kernels {

void normalize_u8_avx2(const uint8_t* src, float* dst, size_t count) {
    const __m256 denom = _mm256_set1_ps(255.0f);
    size_t i = 0;
    for (; i + 32 <= count; i += 32) {
        const __m128i b0 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i + 0));
        const __m128i b1 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i + 8));
        const __m128i b2 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i + 16));
        const __m128i b3 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i + 24));
        const __m256 f0 = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(b0));
        const __m256 f1 = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(b1));
        const __m256 f2 = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(b2));
        const __m256 f3 = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(b3));
        _mm256_storeu_ps(dst + i + 0, _mm256_div_ps(f0, denom));
        _mm256_storeu_ps(dst + i + 8, _mm256_div_ps(f1, denom));
        _mm256_storeu_ps(dst + i + 16, _mm256_div_ps(f2, denom));
        _mm256_storeu_ps(dst + i + 24, _mm256_div_ps(f3, denom));
    }
    normalize_u8_scalar(src + i, dst + i, count - i);
}

}  // namespace edgebench::vision::kernels

#endif  // x86_64
