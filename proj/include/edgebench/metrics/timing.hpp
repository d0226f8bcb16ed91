// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace edgebench::metrics {

struct TimingRecord {
    uint64_t frame_id = 0;
    double pre_ms = 0.0;
    double infer_ms = 0.0;
    double post_ms = 0.0;

    double total_ms() const { return pre_ms + infer_ms + post_ms; }
};

struct TimingSummary {
    double mean_pre_ms = 0.0;
    double mean_infer_ms = 0.0;
    double mean_post_ms = 0.0;
    double mean_total_ms = 0.0;
    double fps = 0.0;  // 1000 / mean_total_ms
    size_t record_count = 0;
};

// Arithmetic means over all records (compensated summation), fps derived
// from the mean total. Throws std::invalid_argument on an empty record set.
TimingSummary aggregate_timing(std::span<const TimingRecord> records);

}  // namespace edgebench::metrics
