// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/agent/target_agent.hpp"

#include <chrono>

#include "edgebench/common/log.hpp"
#include "edgebench/protocol/topics.hpp"
#include "edgebench/vision/image.hpp"
#include "edgebench/vision/pipeline.hpp"

namespace edgebench::agent {

using protocol::AgentState;

TargetAgent::TargetAgent(std::shared_ptr<transport::PubSubEndpoint> endpoint,
                         DetectorRegistry registry, Options options)
    : endpoint_(std::move(endpoint)), registry_(std::move(registry)), options_(std::move(options)) {
    if (!protocol::valid_id(options_.target_id)) {
        throw std::invalid_argument("TargetAgent: invalid target_id");
    }
    if (options_.queue_capacity == 0) {
        throw std::invalid_argument("TargetAgent: queue_capacity must be positive");
    }
}

TargetAgent::~TargetAgent() { stop(); }

void TargetAgent::start() {
    epoch_ = std::chrono::steady_clock::now();
    worker_ = std::thread([this] { worker_loop(); });
    endpoint_->subscribe("bench/+/config",
                         [this](const std::string& topic, const std::vector<uint8_t>& payload) {
                             enqueue(topic, payload);
                         });
    if (options_.publish_boot_status) {
        publish_status(std::string(protocol::kBootSessionId), AgentState::ready, "");
    }
}

void TargetAgent::stop() {
    {
        std::lock_guard<std::mutex> lock(queue_mutex_);
        stopping_ = true;
        queue_cv_.notify_all();
    }
    if (worker_.joinable()) worker_.join();
}

AgentPhase TargetAgent::phase() const {
    std::lock_guard<std::mutex> lock(phase_mutex_);
    return phase_;
}

void TargetAgent::set_stage_observer(std::function<void(const StageSpan&)> observer) {
    stage_observer_ = std::move(observer);
}

double TargetAgent::now_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - epoch_)
        .count();
}

void TargetAgent::enqueue(const std::string& topic, const std::vector<uint8_t>& payload) {
    std::unique_lock<std::mutex> lock(queue_mutex_);
    queue_cv_.wait(lock, [&] { return stopping_ || queue_.size() < options_.queue_capacity; });
    if (stopping_) return;
    queue_.push_back(Envelope{topic, payload});
    queue_cv_.notify_all();
}

void TargetAgent::worker_loop() {
    while (true) {
        Envelope envelope;
        {
            std::unique_lock<std::mutex> lock(queue_mutex_);
            queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
            if (stopping_) return;
            envelope = std::move(queue_.front());
            queue_.pop_front();
            queue_cv_.notify_all();  // wake a blocked producer
        }
        try {
            dispatch(envelope);
        } catch (const std::exception& err) {
            log::error("agent ", options_.target_id, ": ", err.what());
        }
    }
}

void TargetAgent::dispatch(const Envelope& envelope) {
    const bool is_config = protocol::topic_matches("bench/+/config", envelope.topic);
    if (is_config) {
        auto decoded = protocol::decode_config(envelope.payload);
        if (!decoded) {
            log::warn("agent ", options_.target_id, ": undecodable config on ", envelope.topic,
                      ": ", decoded.error().detail);
            return;
        }
        handle_config(decoded.value());
        return;
    }
    if (session_ && envelope.topic == session_->input_topic) {
        auto decoded = protocol::decode_frame(envelope.payload);
        if (!decoded) {
            publish_status(session_->session_id, AgentState::error,
                           std::string("malformed frame: ") + decoded.error().detail);
            return;
        }
        handle_frame(decoded.value());
        return;
    }
    log::debug("agent ", options_.target_id, ": ignoring message on ", envelope.topic);
}

void TargetAgent::handle_config(const protocol::SessionConfig& config) {
    // At-least-once redelivery of the active session's config is answered
    // idempotently, even mid-run.
    if (session_ && *session_ == config) {
        publish_status(config.session_id, AgentState::configured, "");
        return;
    }
    if (phase() == AgentPhase::processing) {
        publish_status(config.session_id, AgentState::error,
                       "config rejected: session '" + (session_ ? session_->session_id : "") +
                           "' still processing");
        return;
    }

    std::unique_ptr<DetectorPlugin> plugin;
    try {
        plugin = registry_.create(config.detector_name, config);
    } catch (const std::exception& err) {
        publish_status(config.session_id, AgentState::error, err.what());
        return;
    }

    if (input_subscription_ != 0) endpoint_->unsubscribe(input_subscription_);
    session_ = config;
    plugin_ = std::move(plugin);
    seen_frames_.clear();
    run_cache_.clear();
    frames_processed_ = 0;
    input_subscription_ = endpoint_->subscribe(
        config.input_topic, [this](const std::string& topic, const std::vector<uint8_t>& payload) {
            enqueue(topic, payload);
        });
    {
        std::lock_guard<std::mutex> lock(phase_mutex_);
        phase_ = AgentPhase::configured;
    }
    publish_status(config.session_id, AgentState::configured, "");
    log::info("agent ", options_.target_id, ": configured for session ", config.session_id,
              " with detector ", config.detector_name);
}

void TargetAgent::handle_frame(const protocol::FrameMessage& frame) {
    if (!session_) return;
    if (frame.session_id != session_->session_id) {
        publish_status(frame.session_id, AgentState::error,
                       "frame " + std::to_string(frame.frame_id) + " for unknown session '" +
                           frame.session_id + "'");
        return;
    }
    if (frame.end_of_stream) {
        // Run boundary: forget per-run state, back to configured.
        seen_frames_.clear();
        run_cache_.clear();
        std::lock_guard<std::mutex> lock(phase_mutex_);
        phase_ = AgentPhase::configured;
        return;
    }
    if (seen_frames_.count(frame.frame_id) != 0) {
        const auto it = run_cache_.find(frame.frame_id);
        if (it != run_cache_.end()) {
            endpoint_->publish(session_->result_topic + "/" + options_.target_id, it->second);
        }
        return;
    }
    process_frame(frame);
}

void TargetAgent::process_frame(const protocol::FrameMessage& frame) {
    {
        std::lock_guard<std::mutex> lock(phase_mutex_);
        phase_ = AgentPhase::processing;
    }

    vision::ImageU8 image;
    image.rows = frame.rows;
    image.cols = frame.cols;
    image.channels = frame.channels;
    image.data = frame.pixel_data;

    FrameInfo info;
    info.frame_id = frame.frame_id;
    info.source_rows = frame.rows;
    info.source_cols = frame.cols;

    const auto emit_span = [this](uint64_t fid, Stage stage, double begin, double end) {
        if (stage_observer_) stage_observer_(StageSpan{fid, stage, begin, end});
    };

    // Pre-process: shared resize+normalize plus plugin-specific packing.
    const double t0 = now_ms();
    vision::PreprocessedFrame input =
        vision::preprocess(image, session_->model_input_width, session_->model_input_height);
    info.scale_x = input.scale_x;
    info.scale_y = input.scale_y;
    plugin_->pre_process(input, info);
    const double t1 = now_ms();
    emit_span(frame.frame_id, Stage::pre, t0, t1);

    // Inference.
    const std::vector<vision::RawDetection> raw = plugin_->infer(input, info);
    const double t2 = now_ms();
    emit_span(frame.frame_id, Stage::infer, t1, t2);

    // Post-process: plugin output decoding plus shared unscale/filter/NMS.
    plugin_->post_process(info);
    std::vector<vision::Detection> detections =
        vision::postprocess(raw, input.scale_x, input.scale_y, session_->confidence_threshold,
                            session_->nms_threshold);
    const double t3 = now_ms();
    emit_span(frame.frame_id, Stage::post, t2, t3);

    // Boundary re-check: nothing below the session threshold leaves the agent.
    std::erase_if(detections, [&](const vision::Detection& det) {
        return det.confidence < session_->confidence_threshold;
    });

    protocol::ResultMessage result;
    result.session_id = session_->session_id;
    result.target_id = options_.target_id;
    result.frame_id = frame.frame_id;
    result.detections = std::move(detections);
    result.pre_ms = t1 - t0;
    result.infer_ms = t2 - t1;
    result.post_ms = t3 - t2;

    if (session_->echo_annotated_images) {
        vision::ImageU8 annotated = image;
        for (const vision::Detection& det : result.detections) {
            vision::draw_box_outline(annotated, det.box, 0, 255, 0);
        }
        protocol::ImagePayload echo;
        echo.rows = annotated.rows;
        echo.cols = annotated.cols;
        echo.channels = annotated.channels;
        echo.pixel_data = std::move(annotated.data);
        result.annotated_image = std::move(echo);
    }

    const std::vector<uint8_t> encoded = protocol::encode(result);
    seen_frames_.insert(frame.frame_id);
    run_cache_[frame.frame_id] = encoded;
    ++frames_processed_;
    endpoint_->publish(session_->result_topic + "/" + options_.target_id, encoded);
}

void TargetAgent::publish_status(const std::string& session_id, AgentState state,
                                 const std::string& detail) {
    protocol::StatusMessage status;
    status.target_id = options_.target_id;
    status.state = state;
    status.detail = detail;
    try {
        const std::string topic =
            protocol::topic_for(session_id, protocol::TopicKind::status, options_.target_id);
        endpoint_->publish(topic, protocol::encode(status));
    } catch (const std::exception& err) {
        log::error("agent ", options_.target_id, ": status publish failed: ", err.what());
    }
}

}  // namespace edgebench::agent
