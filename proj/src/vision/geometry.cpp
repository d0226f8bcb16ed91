// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/vision/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace edgebench::vision {

double iou(const Box& a, const Box& b) {
    const double ix0 = std::max(a.x0, b.x0);
    const double iy0 = std::max(a.y0, b.y0);
    const double ix1 = std::min(a.x1, b.x1);
    const double iy1 = std::min(a.y1, b.y1);
    const double iw = ix1 - ix0;
    const double ih = iy1 - iy0;
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

std::vector<Detection> filter_by_confidence(std::span<const Detection> detections,
                                            double threshold) {
    std::vector<Detection> kept;
    kept.reserve(detections.size());
    for (const Detection& det : detections) {
        if (det.confidence >= threshold) kept.push_back(det);
    }
    return kept;
}

std::vector<Detection> nms(std::span<const Detection> detections, double iou_threshold) {
    std::vector<size_t> order(detections.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
        return detections[lhs].confidence > detections[rhs].confidence;
    });

    std::vector<Detection> kept;
    kept.reserve(detections.size());
    std::vector<bool> suppressed(detections.size(), false);
    for (size_t i = 0; i < order.size(); ++i) {
        const size_t idx = order[i];
        if (suppressed[idx]) continue;
        const Detection& winner = detections[idx];
        kept.push_back(winner);
        for (size_t j = i + 1; j < order.size(); ++j) {
            const size_t other = order[j];
            if (suppressed[other]) continue;
            if (detections[other].class_id != winner.class_id) continue;
            if (iou(winner.box, detections[other].box) > iou_threshold) suppressed[other] = true;
        }
    }
    return kept;
}

}  // namespace edgebench::vision
