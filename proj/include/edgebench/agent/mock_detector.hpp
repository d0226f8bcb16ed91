// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>

#include "edgebench/agent/detector_plugin.hpp"
#include "edgebench/vision/geometry.hpp"

namespace edgebench::agent {

using GroundTruthTable = std::map<uint64_t, std::vector<vision::GroundTruthBox>>;

// Ground-truth-replay detector standing in for a real DNN so the full
// pipeline runs at desk scale. With zero perturbation it reproduces the
// annotation table exactly (confidence 1.0); the perturbation knobs degrade
// it in controlled, seed-reproducible ways. Detection perturbations are
// seeded per frame, so output is independent of delivery order and run
// index; synthetic stage latencies may additionally jitter per call.
struct MockDetectorConfig {
    GroundTruthTable ground_truth;
    double drop_probability = 0.0;      // chance of omitting each GT box
    double false_positive_rate = 0.0;   // chance of one spurious box per frame
    double coordinate_jitter_px = 0.0;  // uniform +-jitter per corner, source px
    double confidence_noise = 0.0;      // confidence drawn from [1-noise, 1]
    double pre_ms = 0.0;                // synthetic stage latencies
    double infer_ms = 0.0;
    double post_ms = 0.0;
    double timing_jitter_ms = 0.0;      // uniform extra latency per stage
    uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

class ReplayMockDetector final : public DetectorPlugin {
public:
    explicit ReplayMockDetector(MockDetectorConfig config);

    void pre_process(const vision::PreprocessedFrame& input, const FrameInfo& info) override;
    std::vector<vision::RawDetection> infer(const vision::PreprocessedFrame& input,
                                            const FrameInfo& info) override;
    void post_process(const FrameInfo& info) override;

private:
    void burn(double base_ms);

    MockDetectorConfig config_;
    std::vector<int> known_classes_;
    uint64_t timing_counter_ = 0;
};

// Registers the built-in mock under the name "replay".
void register_replay_mock(DetectorRegistry& registry, MockDetectorConfig config);

}  // namespace edgebench::agent
