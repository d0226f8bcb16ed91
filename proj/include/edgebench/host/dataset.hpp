// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgebench/agent/mock_detector.hpp"
#include "edgebench/vision/geometry.hpp"

namespace edgebench::host {

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DatasetFrame {
    uint64_t frame_id = 0;
    std::filesystem::path image_path;
    uint32_t width = 0;
    uint32_t height = 0;
};

struct Dataset {
    std::vector<DatasetFrame> frames;  // ascending frame_id
    std::map<uint64_t, std::vector<vision::GroundTruthBox>> annotations;
    std::map<int, std::string> class_names;

    std::vector<vision::GroundTruthBox> all_ground_truth() const;
    agent::GroundTruthTable ground_truth_table() const;
};

// Loads a COCO-format annotation subset:
//   images[id, file_name, width, height]
//   annotations[image_id, category_id, bbox = [x, y, w, h]]
//   categories[id, name]
// bbox is converted to corner form (x, y, x+w, y+h); boxes reaching outside
// the image are clipped with a warning. Throws DatasetError on missing image
// files, unparsable annotations, or annotations referencing unknown images.
Dataset load_dataset(const std::filesystem::path& image_dir,
                     const std::filesystem::path& annotation_file);

// Annotation-only variant for targets running ground-truth-replay mocks;
// image files are not required to exist.
agent::GroundTruthTable load_ground_truth(const std::filesystem::path& annotation_file);

}  // namespace edgebench::host
