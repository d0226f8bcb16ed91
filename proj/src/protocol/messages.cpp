// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/protocol/messages.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace edgebench::protocol {

namespace {

void require(bool condition, const std::string& what) {
    if (!condition) throw std::invalid_argument(what);
}

void validate_detection(const vision::Detection& det, size_t index) {
    const std::string where = "detection " + std::to_string(index);
    require(det.class_id >= 0, where + ": negative class_id");
    require(det.confidence >= 0.0 && det.confidence <= 1.0, where + ": confidence outside [0,1]");
    require(det.box.ordered(), where + ": box corners out of order");
    require(std::isfinite(det.box.x0) && std::isfinite(det.box.y0) && std::isfinite(det.box.x1) &&
                std::isfinite(det.box.y1),
            where + ": non-finite box coordinate");
}

}  // namespace

void SessionConfig::validate() const {
    require(!session_id.empty(), "SessionConfig: empty session_id");
    require(!detector_name.empty(), "SessionConfig: empty detector_name");
    require(!input_topic.empty(), "SessionConfig: empty input_topic");
    require(!result_topic.empty(), "SessionConfig: empty result_topic");
    require(confidence_threshold >= 0.0 && confidence_threshold <= 1.0,
            "SessionConfig: confidence_threshold outside [0,1]");
    require(nms_threshold >= 0.0 && nms_threshold <= 1.0,
            "SessionConfig: nms_threshold outside [0,1]");
    require(run_count >= 1, "SessionConfig: run_count must be >= 1");
    require(input_topic != result_topic, "SessionConfig: input_topic equals result_topic");
}

void FrameMessage::validate() const {
    if (end_of_stream) {
        require(pixel_data.empty(), "FrameMessage: end_of_stream frame carries pixel data");
        return;
    }
    const uint64_t expected =
        static_cast<uint64_t>(rows) * cols * channels;
    require(pixel_data.size() == expected,
            "FrameMessage: pixel_data length " + std::to_string(pixel_data.size()) +
                " != rows*cols*channels " + std::to_string(expected));
}

void ImagePayload::validate() const {
    const uint64_t expected = static_cast<uint64_t>(rows) * cols * channels;
    require(pixel_data.size() == expected,
            "ImagePayload: pixel_data length " + std::to_string(pixel_data.size()) +
                " != rows*cols*channels " + std::to_string(expected));
}

void ResultMessage::validate() const {
    require(!session_id.empty(), "ResultMessage: empty session_id");
    require(!target_id.empty(), "ResultMessage: empty target_id");
    require(pre_ms >= 0.0, "ResultMessage: negative pre_ms");
    require(infer_ms >= 0.0, "ResultMessage: negative infer_ms");
    require(post_ms >= 0.0, "ResultMessage: negative post_ms");
    for (size_t i = 0; i < detections.size(); ++i) validate_detection(detections[i], i);
    if (annotated_image) annotated_image->validate();
}

void StatusMessage::validate() const {
    require(!target_id.empty(), "StatusMessage: empty target_id");
    if (state == AgentState::error) {
        require(!detail.empty(), "StatusMessage: error state requires non-empty detail");
    }
}

const char* to_string(AgentState state) {
    switch (state) {
        case AgentState::ready: return "ready";
        case AgentState::configured: return "configured";
        case AgentState::error: return "error";
    }
    return "?";
}

}  // namespace edgebench::protocol
