// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace edgebench {

// FNV-1a over bytes. Used for digests and for deriving per-client RNG streams;
// not a cryptographic hash.
inline uint64_t fnv1a(const void* data, size_t size, uint64_t seed = 0xcbf29ce484222325ULL) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    uint64_t hash = seed;
    for (size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline uint64_t fnv1a(std::string_view text, uint64_t seed = 0xcbf29ce484222325ULL) {
    return fnv1a(text.data(), text.size(), seed);
}

// splitmix64 finalizer; mixes counters into well-distributed seeds.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) { return mix64(seed ^ mix64(stream)); }

}  // namespace edgebench
