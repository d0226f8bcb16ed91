// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgebench/vision/geometry.hpp"

namespace edgebench::protocol {

enum class ElementType : uint8_t { u8 = 0 };

// Experiment description published by the host. Targets subscribe to the
// session's config topic and configure themselves from this message alone.
struct SessionConfig {
    std::string session_id;
    std::string detector_name;
    std::string input_topic;
    // Base of the per-target result topics; targets publish to
    // "<result_topic>/<target_id>".
    std::string result_topic;
    double confidence_threshold = 0.25;
    double nms_threshold = 0.45;
    uint32_t run_count = 1;
    bool echo_annotated_images = false;
    uint32_t model_input_width = 0;
    uint32_t model_input_height = 0;

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;
    bool operator==(const SessionConfig&) const = default;
};

// One image as sent over the wire. Pixels are row-major, interleaved
// channels, 8-bit, BGR. end_of_stream frames carry no pixels and terminate
// one run's frame sequence.
struct FrameMessage {
    std::string session_id;
    uint64_t frame_id = 0;
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t channels = 0;
    ElementType element_type = ElementType::u8;
    std::vector<uint8_t> pixel_data;
    bool end_of_stream = false;

    void validate() const;
    bool operator==(const FrameMessage&) const = default;
};

// Annotated-image echo carried inside a ResultMessage; raw frame encoding.
struct ImagePayload {
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t channels = 0;
    ElementType element_type = ElementType::u8;
    std::vector<uint8_t> pixel_data;

    void validate() const;
    bool operator==(const ImagePayload&) const = default;
};

struct ResultMessage {
    std::string session_id;
    std::string target_id;
    uint64_t frame_id = 0;
    std::vector<vision::Detection> detections;
    double pre_ms = 0.0;
    double infer_ms = 0.0;
    double post_ms = 0.0;
    std::optional<ImagePayload> annotated_image;

    void validate() const;
    bool operator==(const ResultMessage&) const = default;
};

enum class AgentState : uint8_t { ready = 0, configured = 1, error = 2 };

struct StatusMessage {
    std::string target_id;
    AgentState state = AgentState::ready;
    std::string detail;

    void validate() const;
    bool operator==(const StatusMessage&) const = default;
};

const char* to_string(AgentState state);

}  // namespace edgebench::protocol
