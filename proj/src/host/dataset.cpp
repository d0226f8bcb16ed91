// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/host/dataset.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "edgebench/common/log.hpp"

namespace edgebench::host {

namespace {

using nlohmann::json;

json parse_annotation_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("annotations " + path.string() + ": cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& err) {
        throw DatasetError("annotations " + path.string() + ": " + err.what());
    }
    if (!doc.is_object() || !doc.contains("images") || !doc.contains("annotations")) {
        throw DatasetError("annotations " + path.string() +
                           ": expected object with 'images' and 'annotations'");
    }
    return doc;
}

Dataset parse_dataset(const json& doc, const std::filesystem::path& image_dir,
                      bool require_images) {
    Dataset dataset;
    for (const json& image : doc.at("images")) {
        DatasetFrame frame;
        try {
            frame.frame_id = image.at("id").get<uint64_t>();
            frame.width = image.at("width").get<uint32_t>();
            frame.height = image.at("height").get<uint32_t>();
            frame.image_path = image_dir / image.at("file_name").get<std::string>();
        } catch (const json::exception& err) {
            throw DatasetError(std::string("bad image entry: ") + err.what());
        }
        if (require_images && !std::filesystem::exists(frame.image_path)) {
            throw DatasetError("image file missing: " + frame.image_path.string());
        }
        dataset.frames.push_back(std::move(frame));
    }
    std::sort(dataset.frames.begin(), dataset.frames.end(),
              [](const DatasetFrame& a, const DatasetFrame& b) { return a.frame_id < b.frame_id; });
    for (size_t i = 1; i < dataset.frames.size(); ++i) {
        if (dataset.frames[i].frame_id == dataset.frames[i - 1].frame_id) {
            throw DatasetError("duplicate image id " + std::to_string(dataset.frames[i].frame_id));
        }
    }

    std::map<uint64_t, const DatasetFrame*> frames_by_id;
    for (const DatasetFrame& frame : dataset.frames) frames_by_id[frame.frame_id] = &frame;

    for (const json& annotation : doc.at("annotations")) {
        uint64_t image_id = 0;
        vision::GroundTruthBox gt;
        try {
            image_id = annotation.at("image_id").get<uint64_t>();
            gt.class_id = annotation.at("category_id").get<int>();
            const json& bbox = annotation.at("bbox");
            if (!bbox.is_array() || bbox.size() != 4) {
                throw DatasetError("bbox must be [x, y, w, h]");
            }
            const double x = bbox[0].get<double>();
            const double y = bbox[1].get<double>();
            const double w = bbox[2].get<double>();
            const double h = bbox[3].get<double>();
            if (w < 0.0 || h < 0.0) throw DatasetError("negative bbox extent");
            gt.box = vision::Box{x, y, x + w, y + h};
        } catch (const json::exception& err) {
            throw DatasetError(std::string("bad annotation entry: ") + err.what());
        }
        const auto it = frames_by_id.find(image_id);
        if (it == frames_by_id.end()) {
            throw DatasetError("annotation references unknown image id " +
                               std::to_string(image_id));
        }
        gt.frame_id = image_id;
        // Clip to image bounds; log when an annotation actually pokes out.
        const double max_x = static_cast<double>(it->second->width);
        const double max_y = static_cast<double>(it->second->height);
        const vision::Box original = gt.box;
        gt.box.x0 = std::clamp(gt.box.x0, 0.0, max_x);
        gt.box.x1 = std::clamp(gt.box.x1, 0.0, max_x);
        gt.box.y0 = std::clamp(gt.box.y0, 0.0, max_y);
        gt.box.y1 = std::clamp(gt.box.y1, 0.0, max_y);
        if (gt.box != original) {
            log::warn("annotation for image ", image_id, " clipped to image bounds");
        }
        dataset.annotations[image_id].push_back(gt);
    }

    if (doc.contains("categories")) {
        for (const json& category : doc.at("categories")) {
            try {
                dataset.class_names[category.at("id").get<int>()] =
                    category.at("name").get<std::string>();
            } catch (const json::exception& err) {
                throw DatasetError(std::string("bad category entry: ") + err.what());
            }
        }
    }
    return dataset;
}

}  // namespace

std::vector<vision::GroundTruthBox> Dataset::all_ground_truth() const {
    std::vector<vision::GroundTruthBox> out;
    for (const auto& [frame_id, boxes] : annotations) {
        out.insert(out.end(), boxes.begin(), boxes.end());
    }
    return out;
}

agent::GroundTruthTable Dataset::ground_truth_table() const {
    agent::GroundTruthTable table;
    for (const auto& [frame_id, boxes] : annotations) table[frame_id] = boxes;
    return table;
}

Dataset load_dataset(const std::filesystem::path& image_dir,
                     const std::filesystem::path& annotation_file) {
    const json doc = parse_annotation_file(annotation_file);
    return parse_dataset(doc, image_dir, /*require_images=*/true);
}

agent::GroundTruthTable load_ground_truth(const std::filesystem::path& annotation_file) {
    const json doc = parse_annotation_file(annotation_file);
    return parse_dataset(doc, {}, /*require_images=*/false).ground_truth_table();
}

}  // namespace edgebench::host
