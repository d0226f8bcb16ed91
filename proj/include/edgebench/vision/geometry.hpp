// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace edgebench::vision {

// Axis-aligned box in source-image pixel coordinates, corner form.
// Degenerate (zero-area) boxes are permitted.
struct Box {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    bool ordered() const { return x0 <= x1 && y0 <= y1; }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }

    bool operator==(const Box&) const = default;
};

struct Detection {
    Box box;
    int class_id = 0;
    double confidence = 0.0;

    bool operator==(const Detection&) const = default;
};

struct GroundTruthBox {
    Box box;
    int class_id = 0;
    uint64_t frame_id = 0;

    bool operator==(const GroundTruthBox&) const = default;
};

// Intersection over union. Zero-area boxes have IoU 0 against everything,
// including themselves.
double iou(const Box& a, const Box& b);

// Keeps detections with confidence >= threshold, original order preserved.
std::vector<Detection> filter_by_confidence(std::span<const Detection> detections,
                                            double threshold);

// Per-class greedy NMS. Repeatedly keeps the highest-confidence remaining
// detection (confidence ties broken by lower original index) and suppresses
// same-class detections whose IoU against it exceeds iou_threshold (strict).
// Output is sorted by descending confidence; cross-class pairs never
// suppress each other.
std::vector<Detection> nms(std::span<const Detection> detections, double iou_threshold);

}  // namespace edgebench::vision
