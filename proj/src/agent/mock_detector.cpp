// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/agent/mock_detector.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>

#include "edgebench/common/hash.hpp"

namespace edgebench::agent {

namespace {

double next_unit(uint64_t& state) {
    state = mix64(state + 0x9e3779b97f4a7c15ULL);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

double next_symmetric(uint64_t& state) { return next_unit(state) * 2.0 - 1.0; }

void require_fraction(double value, const char* what) {
    if (value < 0.0 || value > 1.0) {
        throw std::invalid_argument(std::string("MockDetectorConfig: ") + what +
                                    " outside [0,1]");
    }
}

void require_non_negative(double value, const char* what) {
    if (value < 0.0) {
        throw std::invalid_argument(std::string("MockDetectorConfig: ") + what + " negative");
    }
}

}  // namespace

void MockDetectorConfig::validate() const {
    require_fraction(drop_probability, "drop_probability");
    require_fraction(false_positive_rate, "false_positive_rate");
    require_fraction(confidence_noise, "confidence_noise");
    require_non_negative(coordinate_jitter_px, "coordinate_jitter_px");
    require_non_negative(pre_ms, "pre_ms");
    require_non_negative(infer_ms, "infer_ms");
    require_non_negative(post_ms, "post_ms");
    require_non_negative(timing_jitter_ms, "timing_jitter_ms");
}

ReplayMockDetector::ReplayMockDetector(MockDetectorConfig config) : config_(std::move(config)) {
    config_.validate();
    std::set<int> classes;
    for (const auto& [frame_id, boxes] : config_.ground_truth) {
        for (const auto& box : boxes) classes.insert(box.class_id);
    }
    known_classes_.assign(classes.begin(), classes.end());
}

void ReplayMockDetector::burn(double base_ms) {
    double total = base_ms;
    if (config_.timing_jitter_ms > 0.0) {
        uint64_t state = mix_seed(config_.seed ^ 0x74696d696e67ULL, timing_counter_++);
        total += next_unit(state) * config_.timing_jitter_ms;
    }
    if (total <= 0.0) return;
    std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(total));
}

void ReplayMockDetector::pre_process(const vision::PreprocessedFrame& input,
                                     const FrameInfo& info) {
    (void)input;
    (void)info;
    burn(config_.pre_ms);
}

std::vector<vision::RawDetection> ReplayMockDetector::infer(
    const vision::PreprocessedFrame& input, const FrameInfo& info) {
    burn(config_.infer_ms);

    std::vector<vision::RawDetection> detections;
    uint64_t state = mix_seed(config_.seed, info.frame_id);

    const auto it = config_.ground_truth.find(info.frame_id);
    if (it != config_.ground_truth.end()) {
        detections.reserve(it->second.size());
        for (const vision::GroundTruthBox& gt : it->second) {
            if (config_.drop_probability > 0.0 && next_unit(state) < config_.drop_probability) {
                continue;
            }
            vision::RawDetection det;
            det.class_id = gt.class_id;
            // Replay in model-input coordinates; the shared post-process
            // stage maps them back.
            det.box.x0 = gt.box.x0 * info.scale_x;
            det.box.x1 = gt.box.x1 * info.scale_x;
            det.box.y0 = gt.box.y0 * info.scale_y;
            det.box.y1 = gt.box.y1 * info.scale_y;
            if (config_.coordinate_jitter_px > 0.0) {
                det.box.x0 += next_symmetric(state) * config_.coordinate_jitter_px * info.scale_x;
                det.box.x1 += next_symmetric(state) * config_.coordinate_jitter_px * info.scale_x;
                det.box.y0 += next_symmetric(state) * config_.coordinate_jitter_px * info.scale_y;
                det.box.y1 += next_symmetric(state) * config_.coordinate_jitter_px * info.scale_y;
                if (det.box.x0 > det.box.x1) std::swap(det.box.x0, det.box.x1);
                if (det.box.y0 > det.box.y1) std::swap(det.box.y0, det.box.y1);
            }
            det.confidence = config_.confidence_noise > 0.0
                                 ? 1.0 - next_unit(state) * config_.confidence_noise
                                 : 1.0;
            detections.push_back(det);
        }
    }

    if (config_.false_positive_rate > 0.0 && next_unit(state) < config_.false_positive_rate) {
        vision::RawDetection spurious;
        const double w = static_cast<double>(input.width);
        const double h = static_cast<double>(input.height);
        const double cx = next_unit(state) * w;
        const double cy = next_unit(state) * h;
        const double half_w = (0.02 + next_unit(state) * 0.2) * w / 2.0;
        const double half_h = (0.02 + next_unit(state) * 0.2) * h / 2.0;
        spurious.box.x0 = std::max(0.0, cx - half_w);
        spurious.box.x1 = std::min(w, cx + half_w);
        spurious.box.y0 = std::max(0.0, cy - half_h);
        spurious.box.y1 = std::min(h, cy + half_h);
        spurious.class_id =
            known_classes_.empty()
                ? 0
                : known_classes_[static_cast<size_t>(next_unit(state) *
                                                     static_cast<double>(known_classes_.size()))];
        spurious.confidence = next_unit(state);
        detections.push_back(spurious);
    }
    return detections;
}

void ReplayMockDetector::post_process(const FrameInfo& info) {
    (void)info;
    burn(config_.post_ms);
}

void register_replay_mock(DetectorRegistry& registry, MockDetectorConfig config) {
    registry.register_plugin("replay", [config = std::move(config)](
                                           const protocol::SessionConfig&) {
        return std::make_unique<ReplayMockDetector>(config);
    });
}

}  // namespace edgebench::agent
