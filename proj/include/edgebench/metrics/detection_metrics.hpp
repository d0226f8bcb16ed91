// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "edgebench/vision/geometry.hpp"

// COCO-style accuracy evaluation: greedy confidence-ordered matching against
// ground truth at a fixed IoU threshold, 101-point interpolated average
// precision, and mAP averaged over the ten IoU thresholds 0.50:0.05:0.95.
// Conventions pinned here: at most 100 detections per frame, classes without
// ground truth are excluded from the class mean, matching is recomputed
// independently at every threshold.

namespace edgebench::metrics {

inline constexpr size_t kMaxDetectionsPerFrame = 100;
inline constexpr size_t kMapThresholdCount = 10;

// Thresholds 0.50, 0.55, ..., 0.95.
std::array<double, kMapThresholdCount> map_iou_thresholds();

struct FrameDetections {
    uint64_t frame_id = 0;
    std::vector<vision::Detection> detections;
};

struct ClassMatches {
    // TP (1) / FP (0) flags in descending-confidence order (ties broken by
    // lower frame_id, then lower per-frame detection index).
    std::vector<uint8_t> true_positive;
    size_t gt_count = 0;
};

// Greedy matching at one IoU threshold. Every class appearing in the
// detections or the ground truth gets an entry. Each detection matches the
// unmatched same-class ground-truth box in its frame with the highest
// IoU >= iou_threshold; each ground-truth box matches at most once.
std::map<int, ClassMatches> match_detections(std::span<const FrameDetections> frames,
                                             std::span<const vision::GroundTruthBox> ground_truth,
                                             double iou_threshold);

// 101-point interpolated AP over the recall grid {0.00, 0.01, ..., 1.00}.
// Returns 0 when gt_count is 0 (such classes are excluded upstream).
double average_precision(std::span<const uint8_t> true_positive_flags, size_t gt_count);

struct MapResult {
    double map_50_95 = 0.0;
    std::array<double, kMapThresholdCount> per_iou{};
};

// Per threshold: mean AP over classes with at least one ground-truth box;
// final value is the mean over the ten thresholds. Throws
// std::invalid_argument when the ground-truth set is empty.
MapResult map_50_95(std::span<const FrameDetections> frames,
                    std::span<const vision::GroundTruthBox> ground_truth);

}  // namespace edgebench::metrics
