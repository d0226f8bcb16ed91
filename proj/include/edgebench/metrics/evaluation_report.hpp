// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgebench/metrics/detection_metrics.hpp"
#include "edgebench/metrics/power.hpp"
#include "edgebench/metrics/timing.hpp"

namespace edgebench::metrics {

struct PowerReport {
    double absolute_w = 0.0;
    double idle_w = 0.0;
    double relative_w = 0.0;
    // Absent when relative power is zero (efficiency undefined).
    std::optional<double> efficiency_fps_per_w;
    bool clamped = false;
};

// Per-target aggregate of one evaluation session.
struct EvaluationReport {
    std::string target_id;
    uint32_t run_count = 1;
    MapResult accuracy;
    TimingSummary timing;
    std::optional<PowerReport> power;
    // Per-frame detail across all runs, run-major.
    std::vector<TimingRecord> records;
};

// Enforces the report invariants: fps = 1000 / mean_total_ms,
// relative = absolute - idle >= 0 (clamped case flagged), and
// efficiency = fps / relative. Throws std::invalid_argument on violation.
EvaluationReport make_evaluation_report(std::string target_id, uint32_t run_count,
                                        MapResult accuracy, TimingSummary timing,
                                        std::optional<PowerReport> power,
                                        std::vector<TimingRecord> records);

// Builds the checked power block from a measured summary and idle draw.
PowerReport make_power_report(const PowerSummary& summary, double idle_w, double fps);

}  // namespace edgebench::metrics
