// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "edgebench/host/dataset.hpp"
#include "edgebench/metrics/detection_metrics.hpp"
#include "edgebench/vision/geometry.hpp"

// Synthetic fixtures for tests: PPM image directories with COCO-style
// annotations, power logs, and random detection scenes.

namespace edgebench::testsupport {

struct SyntheticDatasetSpec {
    size_t frame_count = 10;
    uint32_t image_width = 64;
    uint32_t image_height = 48;
    int class_count = 3;   // >= 1, category ids 1..class_count
    int max_boxes_per_frame = 4;
    uint64_t seed = 1;
};

struct SyntheticDataset {
    std::filesystem::path image_dir;
    std::filesystem::path annotation_file;
};

// Writes images and annotations under root. Boxes are laid out on a 2x2
// grid with margins, so boxes within one frame never overlap (NMS-safe for
// replay at any threshold).
SyntheticDataset write_synthetic_dataset(const std::filesystem::path& root,
                                         const SyntheticDatasetSpec& spec);

// CSV power log with constant wattage plus optional ripple.
void write_power_log(const std::filesystem::path& path, double t_start, double t_end,
                     double step_s, double watts, double ripple = 0.0, uint64_t seed = 0);

// Random detection scene for metric oracle tests.
struct SceneSpec {
    int max_frames = 2;
    int max_detections_per_frame = 3;
    int max_gt_per_frame = 3;
    int class_count = 3;
    double coordinate_range = 40.0;
};

struct Scene {
    std::vector<metrics::FrameDetections> frames;
    std::vector<vision::GroundTruthBox> ground_truth;
};

Scene random_scene(std::mt19937_64& rng, const SceneSpec& spec);

std::vector<vision::Detection> random_detections(std::mt19937_64& rng, size_t count,
                                                 int class_count, double coordinate_range);

// Fresh directory under the system temp dir; removed by the caller if at all
// (the OS temp dir is fine for CI).
std::filesystem::path fresh_temp_dir(const std::string& prefix);

}  // namespace edgebench::testsupport
