// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgebench/vision/geometry.hpp"
#include "edgebench/vision/image.hpp"

namespace edgebench::vision {

// Normalized model input. Row-major, interleaved channels, values in [0,1].
// scale_x/scale_y map source coordinates into the model-input frame
// (model = source * scale).
struct PreprocessedFrame {
    uint32_t width = 0;
    uint32_t height = 0;
    uint32_t channels = 0;
    std::vector<float> data;
    double scale_x = 1.0;
    double scale_y = 1.0;
};

// Detection in model-input coordinates, before un-scaling back to the
// source frame. Kept as a distinct type so the two coordinate frames
// cannot be mixed up.
struct RawDetection {
    Box box;
    int class_id = 0;
    double confidence = 0.0;
};

// Bilinear resize (pixel-center aligned) followed by normalization to [0,1].
// Throws std::invalid_argument on zero-sized input or target.
PreprocessedFrame preprocess(const ImageU8& frame, uint32_t target_w, uint32_t target_h);

ImageU8 bilinear_resize_u8(const ImageU8& source, uint32_t target_w, uint32_t target_h);

// Maps raw detections back to the source frame, applies the confidence
// filter, then NMS, in that order.
std::vector<Detection> postprocess(std::span<const RawDetection> raw, double scale_x,
                                   double scale_y, double confidence_threshold,
                                   double nms_threshold);

}  // namespace edgebench::vision
