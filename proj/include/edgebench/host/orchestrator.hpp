// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edgebench/host/dataset.hpp"
#include "edgebench/host/evaluators.hpp"
#include "edgebench/host/session.hpp"
#include "edgebench/transport/pubsub.hpp"

namespace edgebench::host {

struct SessionOptions {
    protocol::SessionConfig config;  // input/result topics filled automatically if empty
    std::vector<std::string> target_ids;
    double config_ack_timeout_s = 10.0;
    double drain_timeout_s = 30.0;
    // at-least-once with consumer-side dedup; max_in_flight bounds frames
    // unacknowledged-by-result per target.
    transport::DeliveryPolicy delivery;
    std::map<std::string, PowerSpec> power_specs;
    // When set, annotated-image echoes from run 1 are written here as
    // <dir>/<target_id>/frame_<id>.ppm.
    std::filesystem::path echo_dir;
};

struct TargetOutcome {
    std::optional<metrics::EvaluationReport> report;
    nlohmann::ordered_json fragments;              // evaluator name -> fragment
    std::map<std::string, std::string> evaluator_errors;
    std::vector<uint64_t> missing_frames;          // across runs, when failed
    uint64_t detections_digest = 0;
};

struct SessionOutcome {
    SessionState final_state = SessionState::idle;
    std::string failure_reason;
    std::map<std::string, TargetOutcome> targets;
    std::vector<RunWindow> run_windows;
    std::map<std::string, uint32_t> max_in_flight_observed;
    size_t results_stored = 0;
    double wall_seconds = 0.0;

    bool done() const { return final_state == SessionState::done; }
};

// Drives one evaluation session end to end: publishes the configuration,
// waits for every declared target to acknowledge, streams all frames
// run_count times under flow control (each run terminated by an
// end-of-stream frame and fully drained before the next begins), then runs
// the registered evaluators and produces one outcome per target.
SessionOutcome run_session(transport::PubSubEndpoint& endpoint, const Dataset& dataset,
                           const SessionOptions& options, const EvaluatorRegistry& evaluators);

}  // namespace edgebench::host
