// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgebench/host/dataset.hpp"
#include "edgebench/host/session.hpp"
#include "edgebench/metrics/evaluation_report.hpp"

namespace edgebench::host {

struct PowerSpec {
    std::filesystem::path log_path;
    double idle_w = 0.0;
};

struct RunWindow {
    double start_s = 0.0;  // first frame published, seconds since session epoch
    double end_s = 0.0;    // last result received
};

// Read-only view of a drained session handed to evaluators.
struct EvaluatorContext {
    const protocol::SessionConfig& config;
    const Dataset& dataset;
    const ResultCollector& results;
    const std::vector<RunWindow>& run_windows;
    const std::map<std::string, PowerSpec>& power_specs;
};

// Typed slots the built-in evaluators fill so the final EvaluationReport can
// be assembled and checked; custom evaluators normally leave them alone.
struct TargetEvaluation {
    std::optional<metrics::MapResult> accuracy;
    std::optional<metrics::TimingSummary> timing;
    std::vector<metrics::TimingRecord> records;
    std::optional<metrics::PowerReport> power;
};

class EvaluatorPlugin {
public:
    virtual ~EvaluatorPlugin() = default;
    virtual std::string name() const = 0;
    // Returns this evaluator's report fragment for one target. May throw;
    // a throwing evaluator is recorded per-target and does not affect the
    // others.
    virtual nlohmann::ordered_json evaluate(const EvaluatorContext& context,
                                            const std::string& target_id,
                                            TargetEvaluation& typed) = 0;
};

class EvaluatorRegistry {
public:
    // Throws std::invalid_argument on a duplicate name.
    void register_evaluator(const std::string& name, std::shared_ptr<EvaluatorPlugin> plugin);
    const std::vector<std::shared_ptr<EvaluatorPlugin>>& plugins() const { return plugins_; }

    // Registry preloaded with the built-in accuracy, timing, and power
    // evaluators.
    static EvaluatorRegistry with_defaults();

private:
    std::vector<std::shared_ptr<EvaluatorPlugin>> plugins_;
};

// Built-ins (also usable standalone in tests).
std::shared_ptr<EvaluatorPlugin> make_accuracy_evaluator();
std::shared_ptr<EvaluatorPlugin> make_timing_evaluator();
std::shared_ptr<EvaluatorPlugin> make_power_evaluator();

// Detections fingerprint over run 1, frame order; reproducible across
// identical sessions regardless of timing.
uint64_t detections_digest(const ResultCollector& results, const std::string& target_id);

}  // namespace edgebench::host
