// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

// Pixel-normalization kernels (u8 -> f32 / 255). The scalar kernel is the
// reference; SIMD variants must produce bit-identical output and are selected
// at runtime from CPU capabilities. All variants use IEEE single-precision
// division, so results agree exactly across implementations.

namespace edgebench::vision::kernels {

using NormalizeFn = void (*)(const uint8_t* src, float* dst, size_t count);

void normalize_u8_scalar(const uint8_t* src, float* dst, size_t count);

#if defined(__x86_64__) || defined(_M_X64)
void normalize_u8_avx2(const uint8_t* src, float* dst, size_t count);
bool avx2_available();
#endif

#if defined(__aarch64__)
void normalize_u8_neon(const uint8_t* src, float* dst, size_t count);
#endif

// Best available variant for this CPU.
NormalizeFn normalize_kernel();
const char* normalize_kernel_name();

}  // namespace edgebench::vision::kernels
