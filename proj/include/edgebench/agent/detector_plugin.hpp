// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "edgebench/protocol/messages.hpp"
#include "edgebench/vision/pipeline.hpp"

namespace edgebench::agent {

struct FrameInfo {
    uint64_t frame_id = 0;
    uint32_t source_rows = 0;
    uint32_t source_cols = 0;
    double scale_x = 1.0;
    double scale_y = 1.0;
};

// Target-side object detector. The agent owns the shared pipeline stages
// (resize/normalize before, un-scale/filter/NMS after); a plugin supplies
// inference on the prepared tensor plus any detector-specific stage work.
// All detections are produced in model-input coordinates.
class DetectorPlugin {
public:
    virtual ~DetectorPlugin() = default;

    // Detector-specific input preparation (e.g. tensor layout packing).
    // Runs inside the pre-process timing window.
    virtual void pre_process(const vision::PreprocessedFrame& input, const FrameInfo& info) {
        (void)input;
        (void)info;
    }

    virtual std::vector<vision::RawDetection> infer(const vision::PreprocessedFrame& input,
                                                    const FrameInfo& info) = 0;

    // Detector-specific output decoding. Runs inside the post-process
    // timing window, before the shared un-scale/filter/NMS steps.
    virtual void post_process(const FrameInfo& info) { (void)info; }
};

using DetectorFactory =
    std::function<std::unique_ptr<DetectorPlugin>(const protocol::SessionConfig&)>;

class DetectorRegistry {
public:
    // Throws std::invalid_argument on a duplicate name.
    void register_plugin(const std::string& name, DetectorFactory factory);
    bool contains(const std::string& name) const;
    std::unique_ptr<DetectorPlugin> create(const std::string& name,
                                           const protocol::SessionConfig& config) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, DetectorFactory> factories_;
};

}  // namespace edgebench::agent
