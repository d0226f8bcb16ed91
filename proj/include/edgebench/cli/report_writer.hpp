// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgebench/host/orchestrator.hpp"
#include "edgebench/protocol/messages.hpp"

namespace edgebench::cli {

// Everything one per-target report file is built from.
struct ReportInputs {
    protocol::SessionConfig config;  // exact config the session used
    std::string target_id;
    std::string precision_label;
    host::SessionState state = host::SessionState::done;
    std::string failure_reason;
    std::vector<uint64_t> missing_frames;
    uint64_t detections_digest = 0;
    double wall_seconds = 0.0;
    std::string started_at;  // wall-clock, metadata only
    nlohmann::ordered_json fragments;  // evaluator name -> fragment
    std::map<std::string, std::string> evaluator_errors;
    std::optional<metrics::EvaluationReport> report;
};

// Deterministic: the same inputs always produce byte-identical output.
nlohmann::ordered_json build_report_document(const ReportInputs& inputs);
void write_report_json(const std::filesystem::path& path, const nlohmann::ordered_json& document);

inline constexpr const char* kCsvHeader =
    "target_id,precision_label,mean_infer_ms,mean_total_ms,fps,absolute_w,relative_w,"
    "efficiency_fps_per_w,map_50_95";

// One summary row per target; fields without data stay empty.
std::string csv_summary_row(const ReportInputs& inputs);
void write_csv_summary(const std::filesystem::path& path, const std::vector<std::string>& rows);

}  // namespace edgebench::cli
