// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "edgebench/metrics/detection_metrics.hpp"
#include "edgebench/vision/geometry.hpp"

// Brute-force reference implementations, written independently of the
// library code they check. Everything here favors the most literal possible
// formulation over efficiency.

namespace edgebench::oracle {

// IoU via its own min/max arithmetic (no shared helper with vision::iou).
double iou_reference(const vision::Box& a, const vision::Box& b);

// IoU for integer-coordinate boxes by counting unit lattice cells.
double iou_lattice(int ax0, int ay0, int ax1, int ay1, int bx0, int by0, int bx1, int by1);

// Literal greedy NMS: repeatedly take the highest-confidence unsuppressed
// detection (ties by lower index), then suppress same-class detections with
// IoU strictly above the threshold.
std::vector<vision::Detection> greedy_nms(std::span<const vision::Detection> detections,
                                          double iou_threshold);

struct ClassLabels {
    std::vector<uint8_t> true_positive;
    size_t gt_count = 0;
};

// Greedy confidence-ordered matching, restated from scratch.
std::map<int, ClassLabels> match_reference(std::span<const metrics::FrameDetections> frames,
                                           std::span<const vision::GroundTruthBox> ground_truth,
                                           double iou_threshold);

// 101-point AP by scanning all recall levels against all PR points.
double average_precision_reference(std::span<const uint8_t> flags, size_t gt_count);

// Full mAP 0.5:0.95 over the reference matching + AP.
metrics::MapResult map_reference(std::span<const metrics::FrameDetections> frames,
                                 std::span<const vision::GroundTruthBox> ground_truth);

}  // namespace edgebench::oracle
