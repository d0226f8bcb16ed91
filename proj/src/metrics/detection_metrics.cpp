// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/metrics/detection_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace edgebench::metrics {

namespace {

struct DetEntry {
    double confidence;
    uint64_t frame_id;
    size_t frame_index;  // detection index within its frame, after capping
    vision::Box box;
};

struct GtEntry {
    vision::Box box;
    bool matched = false;
};

bool entry_before(const DetEntry& a, const DetEntry& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.frame_id != b.frame_id) return a.frame_id < b.frame_id;
    return a.frame_index < b.frame_index;
}

}  // namespace

std::array<double, kMapThresholdCount> map_iou_thresholds() {
    std::array<double, kMapThresholdCount> thresholds{};
    for (size_t i = 0; i < kMapThresholdCount; ++i) {
        thresholds[i] = static_cast<double>(50 + 5 * i) / 100.0;
    }
    return thresholds;
}

std::map<int, ClassMatches> match_detections(std::span<const FrameDetections> frames,
                                             std::span<const vision::GroundTruthBox> ground_truth,
                                             double iou_threshold) {
    // Ground truth grouped by (frame, class).
    std::map<std::pair<uint64_t, int>, std::vector<GtEntry>> gt_by_frame_class;
    std::map<int, ClassMatches> result;
    for (const vision::GroundTruthBox& gt : ground_truth) {
        gt_by_frame_class[{gt.frame_id, gt.class_id}].push_back(GtEntry{gt.box});
        result[gt.class_id].gt_count += 1;
    }

    // Detections per class, after the per-frame max-detections cap.
    std::map<int, std::vector<DetEntry>> dets_by_class;
    for (const FrameDetections& frame : frames) {
        std::vector<size_t> order(frame.detections.size());
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
            return frame.detections[lhs].confidence > frame.detections[rhs].confidence;
        });
        const size_t kept = std::min(order.size(), kMaxDetectionsPerFrame);
        for (size_t rank = 0; rank < kept; ++rank) {
            const vision::Detection& det = frame.detections[order[rank]];
            dets_by_class[det.class_id].push_back(
                DetEntry{det.confidence, frame.frame_id, order[rank], det.box});
        }
    }

    for (auto& [class_id, entries] : dets_by_class) {
        std::sort(entries.begin(), entries.end(), entry_before);
        ClassMatches& matches = result[class_id];
        matches.true_positive.reserve(entries.size());
        for (const DetEntry& det : entries) {
            auto gt_it = gt_by_frame_class.find({det.frame_id, class_id});
            double best_iou = -1.0;
            GtEntry* best_gt = nullptr;
            if (gt_it != gt_by_frame_class.end()) {
                for (GtEntry& gt : gt_it->second) {
                    if (gt.matched) continue;
                    const double overlap = vision::iou(det.box, gt.box);
                    if (overlap > best_iou) {
                        best_iou = overlap;
                        best_gt = &gt;
                    }
                }
            }
            if (best_gt != nullptr && best_iou >= iou_threshold) {
                best_gt->matched = true;
                matches.true_positive.push_back(1);
            } else {
                matches.true_positive.push_back(0);
            }
        }
    }
    return result;
}

double average_precision(std::span<const uint8_t> true_positive_flags, size_t gt_count) {
    if (gt_count == 0) return 0.0;
    const size_t n = true_positive_flags.size();
    std::vector<double> recall(n);
    std::vector<double> envelope(n);  // max precision over suffix
    size_t tp = 0;
    for (size_t i = 0; i < n; ++i) {
        if (true_positive_flags[i] != 0) ++tp;
        recall[i] = static_cast<double>(tp) / static_cast<double>(gt_count);
        envelope[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    }
    for (size_t i = n; i-- > 1;) {
        envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);
    }

    double sum = 0.0;
    size_t point = 0;
    for (int r = 0; r <= 100; ++r) {
        const double recall_level = static_cast<double>(r) / 100.0;
        while (point < n && recall[point] < recall_level) ++point;
        if (point == n) break;  // no point reaches this recall; precision 0
        sum += envelope[point];
    }
    return sum / 101.0;
}

MapResult map_50_95(std::span<const FrameDetections> frames,
                    std::span<const vision::GroundTruthBox> ground_truth) {
    if (ground_truth.empty()) {
        throw std::invalid_argument("map_50_95: empty ground-truth set");
    }
    std::set<int> classes_with_gt;
    for (const vision::GroundTruthBox& gt : ground_truth) classes_with_gt.insert(gt.class_id);

    MapResult result;
    const auto thresholds = map_iou_thresholds();
    double threshold_sum = 0.0;
    for (size_t t = 0; t < thresholds.size(); ++t) {
        const auto matches = match_detections(frames, ground_truth, thresholds[t]);
        double ap_sum = 0.0;
        for (const int class_id : classes_with_gt) {
            const auto it = matches.find(class_id);
            if (it == matches.end()) continue;  // no detections and no gt entries
            ap_sum += average_precision(it->second.true_positive, it->second.gt_count);
        }
        result.per_iou[t] = ap_sum / static_cast<double>(classes_with_gt.size());
        threshold_sum += result.per_iou[t];
    }
    result.map_50_95 = threshold_sum / static_cast<double>(thresholds.size());
    return result;
}

}  // namespace edgebench::metrics
