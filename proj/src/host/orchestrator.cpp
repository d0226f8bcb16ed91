// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/host/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <set>

#include "edgebench/common/log.hpp"
#include "edgebench/protocol/codec.hpp"
#include "edgebench/protocol/topics.hpp"
#include "edgebench/vision/image.hpp"

namespace edgebench::host {

namespace {

using Clock = std::chrono::steady_clock;

// Shared between the coordinator and transport delivery handlers. Held by
// shared_ptr so a handler still executing during teardown never touches a
// dead object.
struct SharedState {
    std::mutex mutex;
    std::condition_variable cv;

    ResultCollector collector;
    SessionStateMachine machine;
    Clock::time_point epoch;

    std::set<std::string> configured_targets;
    bool failed = false;
    std::string failure_reason;

    uint32_t current_run = 0;
    std::set<uint64_t> published_this_run;
    size_t frames_published_this_run = 0;
    double last_result_time_s = 0.0;
    std::map<std::string, uint32_t> max_in_flight;

    SharedState(std::string session_id, std::vector<std::string> targets,
                std::vector<uint64_t> frame_ids)
        : collector(std::move(session_id), std::move(targets), std::move(frame_ids)),
          epoch(Clock::now()) {}

    double seconds_since_epoch() const {
        return std::chrono::duration<double>(Clock::now() - epoch).count();
    }

    // Requires mutex held.
    void fail(const std::string& reason) {
        if (!failed) {
            failed = true;
            failure_reason = reason;
            if (machine.state() != SessionState::failed) {
                machine.transition(SessionState::failed);
            }
            log::error("session failed: ", reason);
        }
        cv.notify_all();
    }

    size_t min_stored_this_run() const {
        size_t minimum = SIZE_MAX;
        for (const std::string& target : collector.target_ids()) {
            minimum = std::min(minimum, collector.stored_in_run(target, current_run));
        }
        return minimum;
    }

    bool run_drained() const {
        const size_t frames = collector.frame_ids().size();
        for (const std::string& target : collector.target_ids()) {
            if (collector.stored_in_run(target, current_run) < frames) return false;
        }
        return true;
    }
};

void handle_status_payload(SharedState& state, const std::vector<uint8_t>& payload) {
    auto decoded = protocol::decode_status(payload);
    if (!decoded) {
        log::warn("host: undecodable status message: ", decoded.error().detail);
        return;
    }
    const protocol::StatusMessage& status = decoded.value();
    std::lock_guard<std::mutex> lock(state.mutex);
    if (status.state == protocol::AgentState::configured) {
        state.configured_targets.insert(status.target_id);
        state.cv.notify_all();
    } else if (status.state == protocol::AgentState::error) {
        state.fail("target " + status.target_id + " reported: " + status.detail);
    }
}

void handle_result_payload(SharedState& state, const std::vector<uint8_t>& payload) {
    auto decoded = protocol::decode_result(payload);
    const double received_at = state.seconds_since_epoch();
    std::lock_guard<std::mutex> lock(state.mutex);
    if (!decoded) {
        state.fail("undecodable result: " + decoded.error().detail);
        return;
    }
    const protocol::ResultMessage& result = decoded.value();
    if (state.machine.state() != SessionState::streaming &&
        state.machine.state() != SessionState::draining) {
        return;  // late traffic after failure or completion
    }
    const bool published = state.published_this_run.count(result.frame_id) != 0;
    const auto outcome =
        state.collector.collect(state.current_run, published, result, payload, received_at);
    using Outcome = ResultCollector::Outcome;
    switch (outcome) {
        case Outcome::stored:
            state.last_result_time_s = std::max(state.last_result_time_s, received_at);
            state.cv.notify_all();
            break;
        case Outcome::duplicate_ignored:
        case Outcome::straggler_ignored:
            break;
        case Outcome::conflict:
            state.fail("conflicting duplicate result for frame " +
                       std::to_string(result.frame_id) + " from " + result.target_id);
            break;
        case Outcome::wrong_session:
            state.fail("result with mismatched session id '" + result.session_id + "'");
            break;
        case Outcome::unknown_target:
            state.fail("result from undeclared target '" + result.target_id + "'");
            break;
        case Outcome::unknown_frame:
            state.fail("result for frame " + std::to_string(result.frame_id) +
                       " outside the dataset");
            break;
        case Outcome::unexpected:
            state.fail("result for frame " + std::to_string(result.frame_id) +
                       " that was not published this run");
            break;
    }
}

protocol::FrameMessage frame_message_for(const std::string& session_id, const DatasetFrame& frame) {
    const vision::ImageU8 image = vision::load_pnm(frame.image_path);
    protocol::FrameMessage message;
    message.session_id = session_id;
    message.frame_id = frame.frame_id;
    message.rows = image.rows;
    message.cols = image.cols;
    message.channels = image.channels;
    message.element_type = protocol::ElementType::u8;
    message.pixel_data = image.data;
    message.end_of_stream = false;
    return message;
}

void write_annotated_echoes(const ResultCollector& collector, const std::string& target_id,
                            const std::filesystem::path& echo_dir) {
    bool dir_ready = false;
    for (const uint64_t frame_id : collector.frame_ids()) {
        const StoredResult* stored = collector.find(target_id, 1, frame_id);
        if (stored == nullptr || !stored->message.annotated_image) continue;
        const protocol::ImagePayload& echo = *stored->message.annotated_image;
        if (!dir_ready) {
            std::filesystem::create_directories(echo_dir / target_id);
            dir_ready = true;
        }
        vision::ImageU8 image;
        image.rows = echo.rows;
        image.cols = echo.cols;
        image.channels = echo.channels;
        image.data = echo.pixel_data;
        vision::save_pnm(echo_dir / target_id / ("frame_" + std::to_string(frame_id) + ".ppm"),
                         image);
    }
}

}  // namespace

SessionOutcome run_session(transport::PubSubEndpoint& endpoint, const Dataset& dataset,
                           const SessionOptions& options, const EvaluatorRegistry& evaluators) {
    if (options.target_ids.empty()) {
        throw std::invalid_argument("run_session: no targets declared");
    }
    if (dataset.frames.empty()) {
        throw std::invalid_argument("run_session: empty dataset");
    }
    for (const std::string& target : options.target_ids) {
        if (!protocol::valid_id(target)) {
            throw std::invalid_argument("run_session: invalid target id '" + target + "'");
        }
    }
    if (std::set<std::string>(options.target_ids.begin(), options.target_ids.end()).size() !=
        options.target_ids.size()) {
        throw std::invalid_argument("run_session: duplicate target ids");
    }
    if (options.delivery.max_in_flight < 1) {
        throw std::invalid_argument("run_session: max_in_flight must be >= 1");
    }
    if (!options.delivery.at_least_once) {
        throw std::invalid_argument(
            "run_session: only at-least-once delivery is implemented");
    }

    protocol::SessionConfig config = options.config;
    const std::string session_id = config.session_id;
    if (config.input_topic.empty()) {
        config.input_topic = protocol::topic_for(session_id, protocol::TopicKind::input);
    }
    if (config.result_topic.empty()) {
        config.result_topic = "bench/" + session_id + "/result";
    }
    config.validate();

    std::vector<uint64_t> frame_ids;
    frame_ids.reserve(dataset.frames.size());
    for (const DatasetFrame& frame : dataset.frames) frame_ids.push_back(frame.frame_id);

    auto state = std::make_shared<SharedState>(session_id, options.target_ids, frame_ids);
    SessionOutcome outcome;

    std::vector<uint64_t> subscriptions;
    for (const std::string& target : options.target_ids) {
        subscriptions.push_back(endpoint.subscribe(
            protocol::topic_for(session_id, protocol::TopicKind::status, target),
            [state](const std::string&, const std::vector<uint8_t>& payload) {
                handle_status_payload(*state, payload);
            }));
        subscriptions.push_back(endpoint.subscribe(
            config.result_topic + "/" + target,
            [state](const std::string&, const std::vector<uint8_t>& payload) {
                handle_result_payload(*state, payload);
            }));
    }

    const auto finish = [&](SessionState final_state) {
        for (const uint64_t handle : subscriptions) {
            try {
                endpoint.unsubscribe(handle);
            } catch (const transport::TransportError& err) {
                log::warn("unsubscribe during teardown failed: ", err.what());
            }
        }
        std::lock_guard<std::mutex> lock(state->mutex);
        outcome.final_state = final_state;
        outcome.results_stored = state->collector.total_stored();
        outcome.wall_seconds = state->seconds_since_epoch();
        outcome.max_in_flight_observed = state->max_in_flight;
        outcome.failure_reason = state->failure_reason;
        return outcome;
    };

    const auto publish_or_fail = [&](const std::string& topic,
                                     const std::vector<uint8_t>& payload) {
        try {
            endpoint.publish(topic, payload);
            return true;
        } catch (const transport::TransportError& err) {
            std::lock_guard<std::mutex> lock(state->mutex);
            state->fail(std::string("publish to ") + topic + " failed: " + err.what());
            return false;
        }
    };

    // ---- configure ---------------------------------------------------------
    {
        std::lock_guard<std::mutex> lock(state->mutex);
        state->machine.transition(SessionState::configuring);
    }
    if (!publish_or_fail(protocol::topic_for(session_id, protocol::TopicKind::config),
                         protocol::encode(config))) {
        return finish(SessionState::failed);
    }
    {
        std::unique_lock<std::mutex> lock(state->mutex);
        const bool ready = state->cv.wait_for(
            lock, std::chrono::duration<double>(options.config_ack_timeout_s), [&] {
                return state->failed ||
                       state->configured_targets.size() == options.target_ids.size();
            });
        if (!state->failed && !ready) {
            std::string missing;
            for (const std::string& target : options.target_ids) {
                if (state->configured_targets.count(target) == 0) missing += " " + target;
            }
            state->fail("configuration acknowledgment timeout; missing:" + missing);
        }
        if (state->failed) {
            lock.unlock();
            return finish(SessionState::failed);
        }
    }

    // ---- stream runs -------------------------------------------------------
    for (uint32_t run = 1; run <= config.run_count; ++run) {
        {
            std::lock_guard<std::mutex> lock(state->mutex);
            if (state->failed) break;
            state->machine.transition(SessionState::streaming);
            state->current_run = run;
            state->published_this_run.clear();
            state->frames_published_this_run = 0;
        }
        RunWindow window;
        window.start_s = state->seconds_since_epoch();

        bool aborted = false;
        for (const DatasetFrame& frame : dataset.frames) {
            protocol::FrameMessage message = frame_message_for(session_id, frame);
            const std::vector<uint8_t> payload = protocol::encode(message);
            {
                std::unique_lock<std::mutex> lock(state->mutex);
                const bool window_free = state->cv.wait_for(
                    lock, std::chrono::duration<double>(options.drain_timeout_s), [&] {
                        return state->failed ||
                               state->frames_published_this_run - state->min_stored_this_run() <
                                   options.delivery.max_in_flight;
                    });
                if (!state->failed && !window_free) {
                    state->fail("flow-control stall in run " + std::to_string(run));
                }
                if (state->failed) {
                    aborted = true;
                    break;
                }
                state->published_this_run.insert(frame.frame_id);
                state->frames_published_this_run += 1;
                for (const std::string& target : state->collector.target_ids()) {
                    const uint32_t in_flight =
                        static_cast<uint32_t>(state->frames_published_this_run -
                                              state->collector.stored_in_run(target, run));
                    state->max_in_flight[target] =
                        std::max(state->max_in_flight[target], in_flight);
                }
            }
            if (!publish_or_fail(config.input_topic, payload)) {
                aborted = true;
                break;
            }
        }
        if (aborted) break;

        protocol::FrameMessage eos;
        eos.session_id = session_id;
        eos.end_of_stream = true;
        if (!publish_or_fail(config.input_topic, protocol::encode(eos))) break;

        {
            std::unique_lock<std::mutex> lock(state->mutex);
            if (state->failed) break;
            state->machine.transition(SessionState::draining);
            const bool drained =
                state->cv.wait_for(lock, std::chrono::duration<double>(options.drain_timeout_s),
                                   [&] { return state->failed || state->run_drained(); });
            if (!state->failed && !drained) {
                for (const std::string& target : options.target_ids) {
                    auto missing = state->collector.missing_in_run(target, run);
                    auto& sink = outcome.targets[target].missing_frames;
                    sink.insert(sink.end(), missing.begin(), missing.end());
                }
                state->fail("drain timeout in run " + std::to_string(run));
            }
            if (state->failed) break;
            window.end_s = state->last_result_time_s;
        }
        outcome.run_windows.push_back(window);
    }
    if ([&] {
            std::lock_guard<std::mutex> lock(state->mutex);
            return state->failed;
        }()) {
        return finish(SessionState::failed);
    }

    // ---- evaluate ----------------------------------------------------------
    // The session lock is held for the whole phase: late duplicate traffic
    // parks on the mutex and bounces off the state check, and evaluators get
    // a quiesced, read-only view of the result store.
    {
        std::lock_guard<std::mutex> lock(state->mutex);
        state->machine.transition(SessionState::evaluating);

        EvaluatorContext context{config, dataset, state->collector, outcome.run_windows,
                                 options.power_specs};
        for (const std::string& target : options.target_ids) {
            TargetOutcome& target_outcome = outcome.targets[target];
            TargetEvaluation typed;
            for (const auto& plugin : evaluators.plugins()) {
                try {
                    target_outcome.fragments[plugin->name()] =
                        plugin->evaluate(context, target, typed);
                } catch (const std::exception& err) {
                    log::warn("evaluator '", plugin->name(), "' failed for ", target, ": ",
                              err.what());
                    target_outcome.evaluator_errors[plugin->name()] = err.what();
                }
            }
            if (typed.accuracy && typed.timing) {
                target_outcome.report = metrics::make_evaluation_report(
                    target, config.run_count, *typed.accuracy, *typed.timing, typed.power,
                    std::move(typed.records));
            }
            target_outcome.detections_digest = detections_digest(state->collector, target);
            if (!options.echo_dir.empty() && config.echo_annotated_images) {
                write_annotated_echoes(state->collector, target, options.echo_dir);
            }
        }

        state->machine.transition(SessionState::done);
    }
    return finish(SessionState::done);
}

}  // namespace edgebench::host
