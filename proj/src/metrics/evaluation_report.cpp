// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/metrics/evaluation_report.hpp"

#include <cmath>
#include <stdexcept>

namespace edgebench::metrics {

namespace {

void require(bool condition, const char* what) {
    if (!condition) throw std::invalid_argument(what);
}

}  // namespace

PowerReport make_power_report(const PowerSummary& summary, double idle_w, double fps) {
    PowerReport report;
    report.absolute_w = summary.absolute_w;
    report.idle_w = idle_w;
    report.relative_w = summary.relative_w;
    report.clamped = summary.clamped;
    if (summary.relative_w > 0.0) {
        report.efficiency_fps_per_w = efficiency(fps, summary.relative_w);
    }
    return report;
}

EvaluationReport make_evaluation_report(std::string target_id, uint32_t run_count,
                                        MapResult accuracy, TimingSummary timing,
                                        std::optional<PowerReport> power,
                                        std::vector<TimingRecord> records) {
    require(!target_id.empty(), "EvaluationReport: empty target_id");
    require(run_count >= 1, "EvaluationReport: run_count must be >= 1");
    require(std::isfinite(timing.mean_total_ms) && timing.mean_total_ms > 0.0,
            "EvaluationReport: mean_total_ms must be positive");
    require(timing.fps == 1000.0 / timing.mean_total_ms, "EvaluationReport: fps inconsistent");
    require(accuracy.map_50_95 >= 0.0 && accuracy.map_50_95 <= 1.0,
            "EvaluationReport: map_50_95 outside [0,1]");
    if (power) {
        require(power->relative_w >= 0.0, "EvaluationReport: negative relative power");
        if (power->clamped) {
            require(power->relative_w == 0.0, "EvaluationReport: clamped power must be zero");
        } else {
            require(power->relative_w == power->absolute_w - power->idle_w,
                    "EvaluationReport: relative power inconsistent");
        }
        if (power->efficiency_fps_per_w) {
            require(power->relative_w > 0.0, "EvaluationReport: efficiency with zero power");
            require(*power->efficiency_fps_per_w == timing.fps / power->relative_w,
                    "EvaluationReport: efficiency inconsistent");
        }
    }
    EvaluationReport report;
    report.target_id = std::move(target_id);
    report.run_count = run_count;
    report.accuracy = accuracy;
    report.timing = timing;
    report.power = std::move(power);
    report.records = std::move(records);
    return report;
}

}  // namespace edgebench::metrics
