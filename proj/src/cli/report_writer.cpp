// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/cli/report_writer.hpp"

#include <fstream>
#include <sstream>

namespace edgebench::cli {

namespace {

using nlohmann::ordered_json;

// Shortest round-trip formatting, identical to the JSON number encoding so
// the CSV and JSON views of one value always agree.
std::string number(double value) { return nlohmann::json(value).dump(); }

std::string hex_digest(uint64_t digest) {
    std::ostringstream os;
    os << "0x" << std::hex << digest;
    return os.str();
}

ordered_json config_echo(const protocol::SessionConfig& config) {
    ordered_json echo;
    echo["session_id"] = config.session_id;
    echo["detector_name"] = config.detector_name;
    echo["input_topic"] = config.input_topic;
    echo["result_topic"] = config.result_topic;
    echo["confidence_threshold"] = config.confidence_threshold;
    echo["nms_threshold"] = config.nms_threshold;
    echo["run_count"] = config.run_count;
    echo["echo_annotated_images"] = config.echo_annotated_images;
    echo["model_input_width"] = config.model_input_width;
    echo["model_input_height"] = config.model_input_height;
    return echo;
}

}  // namespace

ordered_json build_report_document(const ReportInputs& inputs) {
    ordered_json doc;
    ordered_json session;
    session["target_id"] = inputs.target_id;
    session["state"] = host::to_string(inputs.state);
    if (!inputs.failure_reason.empty()) session["failure_reason"] = inputs.failure_reason;
    session["config"] = config_echo(inputs.config);
    if (!inputs.precision_label.empty()) session["precision_label"] = inputs.precision_label;
    session["started_at"] = inputs.started_at;
    session["wall_seconds"] = inputs.wall_seconds;
    session["missing_frames"] = inputs.missing_frames;
    session["detections_digest"] = hex_digest(inputs.detections_digest);
    doc["session"] = session;

    static constexpr const char* kBuiltins[] = {"accuracy", "timing", "power"};
    for (const char* name : kBuiltins) {
        if (inputs.fragments.contains(name)) doc[name] = inputs.fragments[name];
    }
    if (inputs.report) {
        // Per-frame detail, run-major.
        ordered_json records = ordered_json::array();
        const size_t per_run = inputs.report->records.empty()
                                   ? 0
                                   : inputs.report->records.size() / inputs.report->run_count;
        for (size_t i = 0; i < inputs.report->records.size(); ++i) {
            const metrics::TimingRecord& record = inputs.report->records[i];
            ordered_json row;
            row["run"] = per_run == 0 ? 1 : (i / per_run) + 1;
            row["frame_id"] = record.frame_id;
            row["pre_ms"] = record.pre_ms;
            row["infer_ms"] = record.infer_ms;
            row["post_ms"] = record.post_ms;
            row["total_ms"] = record.total_ms();
            records.push_back(std::move(row));
        }
        if (doc.contains("timing")) doc["timing"]["records"] = std::move(records);
    }

    ordered_json extras = ordered_json::object();
    for (const auto& [name, fragment] : inputs.fragments.items()) {
        if (name == "accuracy" || name == "timing" || name == "power") continue;
        extras[name] = fragment;
    }
    if (!extras.empty()) doc["evaluators"] = extras;
    if (!inputs.evaluator_errors.empty()) {
        ordered_json errors;
        for (const auto& [name, message] : inputs.evaluator_errors) errors[name] = message;
        doc["evaluator_errors"] = errors;
    }
    return doc;
}

void write_report_json(const std::filesystem::path& path, const ordered_json& document) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report to " + path.string());
    out << document.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string csv_summary_row(const ReportInputs& inputs) {
    std::string row = inputs.target_id + "," + inputs.precision_label + ",";
    if (inputs.report) {
        const metrics::TimingSummary& timing = inputs.report->timing;
        row += number(timing.mean_infer_ms) + "," + number(timing.mean_total_ms) + "," +
               number(timing.fps) + ",";
        if (inputs.report->power) {
            const metrics::PowerReport& power = *inputs.report->power;
            row += number(power.absolute_w) + "," + number(power.relative_w) + ",";
            row += power.efficiency_fps_per_w ? number(*power.efficiency_fps_per_w) : "";
            row += ",";
        } else {
            row += ",,,";
        }
        row += number(inputs.report->accuracy.map_50_95);
    } else {
        row += ",,,,,,";
    }
    return row;
}

void write_csv_summary(const std::filesystem::path& path, const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary to " + path.string());
    out << kCsvHeader << '\n';
    for (const std::string& row : rows) out << row << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace edgebench::cli
