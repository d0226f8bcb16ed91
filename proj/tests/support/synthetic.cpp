// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/synthetic.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "edgebench/vision/image.hpp"

namespace edgebench::testsupport {

namespace {
using nlohmann::json;
}

SyntheticDataset write_synthetic_dataset(const std::filesystem::path& root,
                                         const SyntheticDatasetSpec& spec) {
    const std::filesystem::path image_dir = root / "images";
    std::filesystem::create_directories(image_dir);
    std::mt19937_64 rng(spec.seed);

    json images = json::array();
    json annotations = json::array();
    json categories = json::array();
    for (int c = 1; c <= spec.class_count; ++c) {
        categories.push_back({{"id", c}, {"name", "class_" + std::to_string(c)}});
    }

    // 2x2 grid of cells per image; at most one box per cell.
    const uint32_t cell_w = spec.image_width / 2;
    const uint32_t cell_h = spec.image_height / 2;
    std::uniform_int_distribution<int> box_count_dist(1, spec.max_boxes_per_frame);
    std::uniform_int_distribution<int> class_dist(1, spec.class_count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    long annotation_id = 1;
    for (size_t f = 0; f < spec.frame_count; ++f) {
        const uint64_t frame_id = f + 1;
        char name[32];
        std::snprintf(name, sizeof(name), "img_%05llu.ppm",
                      static_cast<unsigned long long>(frame_id));

        vision::ImageU8 image = vision::make_image(spec.image_height, spec.image_width, 3);
        for (auto& byte : image.data) {
            byte = static_cast<uint8_t>(rng() & 0xff);
        }
        vision::save_pnm(image_dir / name, image);

        images.push_back({{"id", frame_id},
                          {"file_name", name},
                          {"width", spec.image_width},
                          {"height", spec.image_height}});

        const int boxes = std::min(box_count_dist(rng), 4);
        std::array<int, 4> cells{0, 1, 2, 3};
        std::shuffle(cells.begin(), cells.end(), rng);
        for (int b = 0; b < boxes; ++b) {
            const int cell = cells[static_cast<size_t>(b)];
            const double base_x = static_cast<double>((cell % 2) * cell_w);
            const double base_y = static_cast<double>((cell / 2) * cell_h);
            // Margins keep boxes comfortably inside their cell.
            const double x = base_x + 2.0 + unit(rng) * (cell_w / 4.0);
            const double y = base_y + 2.0 + unit(rng) * (cell_h / 4.0);
            const double w = 4.0 + unit(rng) * (cell_w / 2.0);
            const double h = 4.0 + unit(rng) * (cell_h / 2.0);
            annotations.push_back({{"id", annotation_id++},
                                   {"image_id", frame_id},
                                   {"category_id", class_dist(rng)},
                                   {"bbox", {x, y, w, h}}});
        }
    }

    json doc;
    doc["images"] = images;
    doc["annotations"] = annotations;
    doc["categories"] = categories;

    const std::filesystem::path annotation_file = root / "annotations.json";
    std::ofstream out(annotation_file);
    out << doc.dump(1);
    out.close();

    return SyntheticDataset{image_dir, annotation_file};
}

void write_power_log(const std::filesystem::path& path, double t_start, double t_end,
                     double step_s, double watts, double ripple, uint64_t seed) {
    std::ofstream out(path);
    out << "t_seconds,watts\n";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-ripple, ripple);
    for (double t = t_start; t <= t_end; t += step_s) {
        const double value = watts + (ripple > 0.0 ? jitter(rng) : 0.0);
        out << t << "," << value << "\n";
    }
}

Scene random_scene(std::mt19937_64& rng, const SceneSpec& spec) {
    Scene scene;
    std::uniform_int_distribution<int> frame_count_dist(1, spec.max_frames);
    std::uniform_int_distribution<int> det_count_dist(0, spec.max_detections_per_frame);
    std::uniform_int_distribution<int> gt_count_dist(0, spec.max_gt_per_frame);
    std::uniform_int_distribution<int> class_dist(0, spec.class_count - 1);
    std::uniform_real_distribution<double> coord(0.0, spec.coordinate_range);
    std::uniform_real_distribution<double> extent(0.5, spec.coordinate_range / 2.0);
    std::uniform_real_distribution<double> conf(0.0, 1.0);

    const int frames = frame_count_dist(rng);
    for (int f = 0; f < frames; ++f) {
        const uint64_t frame_id = static_cast<uint64_t>(f + 1);
        metrics::FrameDetections frame;
        frame.frame_id = frame_id;
        const int dets = det_count_dist(rng);
        for (int d = 0; d < dets; ++d) {
            vision::Detection det;
            const double x = coord(rng);
            const double y = coord(rng);
            det.box = vision::Box{x, y, x + extent(rng), y + extent(rng)};
            det.class_id = class_dist(rng);
            det.confidence = conf(rng);
            frame.detections.push_back(det);
        }
        scene.frames.push_back(std::move(frame));

        const int gts = gt_count_dist(rng);
        for (int g = 0; g < gts; ++g) {
            vision::GroundTruthBox gt;
            const double x = coord(rng);
            const double y = coord(rng);
            gt.box = vision::Box{x, y, x + extent(rng), y + extent(rng)};
            gt.class_id = class_dist(rng);
            gt.frame_id = frame_id;
            scene.ground_truth.push_back(gt);
        }
    }
    return scene;
}

std::vector<vision::Detection> random_detections(std::mt19937_64& rng, size_t count,
                                                 int class_count, double coordinate_range) {
    std::uniform_int_distribution<int> class_dist(0, class_count - 1);
    std::uniform_real_distribution<double> coord(0.0, coordinate_range);
    std::uniform_real_distribution<double> extent(0.5, coordinate_range / 2.0);
    std::uniform_real_distribution<double> conf(0.0, 1.0);
    std::vector<vision::Detection> detections;
    detections.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        vision::Detection det;
        const double x = coord(rng);
        const double y = coord(rng);
        det.box = vision::Box{x, y, x + extent(rng), y + extent(rng)};
        det.class_id = class_dist(rng);
        det.confidence = conf(rng);
        detections.push_back(det);
    }
    return detections;
}

std::filesystem::path fresh_temp_dir(const std::string& prefix) {
    static std::atomic<uint64_t> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     (prefix + "_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace edgebench::testsupport
