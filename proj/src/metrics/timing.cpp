// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/metrics/timing.hpp"

#include <stdexcept>

namespace edgebench::metrics {

namespace {

// Kahan-compensated accumulator; keeps the 10^6-record mean stable.
class CompensatedSum {
public:
    void add(double value) {
        const double y = value - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace

TimingSummary aggregate_timing(std::span<const TimingRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate_timing: empty record set");
    }
    CompensatedSum pre;
    CompensatedSum infer;
    CompensatedSum post;
    CompensatedSum total;
    for (const TimingRecord& record : records) {
        pre.add(record.pre_ms);
        infer.add(record.infer_ms);
        post.add(record.post_ms);
        total.add(record.total_ms());
    }
    const double count = static_cast<double>(records.size());
    TimingSummary summary;
    summary.mean_pre_ms = pre.value() / count;
    summary.mean_infer_ms = infer.value() / count;
    summary.mean_post_ms = post.value() / count;
    summary.mean_total_ms = total.value() / count;
    summary.fps = 1000.0 / summary.mean_total_ms;
    summary.record_count = records.size();
    return summary;
}

}  // namespace edgebench::metrics
