// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <condition_variable>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "edgebench/agent/detector_plugin.hpp"
#include "edgebench/protocol/codec.hpp"
#include "edgebench/transport/pubsub.hpp"

namespace edgebench::agent {

enum class AgentPhase { booted, configured, processing };

// The embedded-side application. Subscribes to session configuration,
// instantiates the named detector plugin, processes frames strictly in
// arrival order (one transport-delivery context feeding a single worker
// loop through a bounded queue), measures the three pipeline stages on a
// monotonic clock, and publishes results. Duplicate frame deliveries are
// answered by republishing the cached result without reprocessing.
class TargetAgent {
public:
    struct Options {
        std::string target_id;
        size_t queue_capacity = 64;
        bool publish_boot_status = true;
    };

    enum class Stage { pre = 0, infer = 1, post = 2 };
    struct StageSpan {
        uint64_t frame_id;
        Stage stage;
        double begin_ms;  // monotonic, relative to agent start
        double end_ms;
    };

    TargetAgent(std::shared_ptr<transport::PubSubEndpoint> endpoint, DetectorRegistry registry,
                Options options);
    ~TargetAgent();

    TargetAgent(const TargetAgent&) = delete;
    TargetAgent& operator=(const TargetAgent&) = delete;

    // Subscribes to "bench/+/config", publishes the boot ready status, and
    // starts the worker loop.
    void start();
    void stop();

    AgentPhase phase() const;
    uint64_t frames_processed() const { return frames_processed_.load(); }
    const std::string& target_id() const { return options_.target_id; }

    // Test instrumentation: called once per completed pipeline stage, from
    // the worker thread.
    void set_stage_observer(std::function<void(const StageSpan&)> observer);

private:
    struct Envelope {
        std::string topic;
        std::vector<uint8_t> payload;
    };

    void enqueue(const std::string& topic, const std::vector<uint8_t>& payload);
    void worker_loop();
    void dispatch(const Envelope& envelope);
    void handle_config(const protocol::SessionConfig& config);
    void handle_frame(const protocol::FrameMessage& frame);
    void process_frame(const protocol::FrameMessage& frame);
    void publish_status(const std::string& session_id, protocol::AgentState state,
                        const std::string& detail);
    double now_ms() const;

    std::shared_ptr<transport::PubSubEndpoint> endpoint_;
    DetectorRegistry registry_;
    Options options_;

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<Envelope> queue_;
    bool stopping_ = false;
    std::thread worker_;
    std::chrono::steady_clock::time_point epoch_;

    // Worker-owned session state.
    std::optional<protocol::SessionConfig> session_;
    std::unique_ptr<DetectorPlugin> plugin_;
    uint64_t input_subscription_ = 0;
    std::unordered_set<uint64_t> seen_frames_;                      // current run
    std::unordered_map<uint64_t, std::vector<uint8_t>> run_cache_;  // fid -> result bytes
    std::atomic<uint64_t> frames_processed_{0};

    mutable std::mutex phase_mutex_;
    AgentPhase phase_ = AgentPhase::booted;

    std::function<void(const StageSpan&)> stage_observer_;
};

}  // namespace edgebench::agent
