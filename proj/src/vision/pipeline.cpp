// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/vision/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgebench/vision/kernels.hpp"

namespace edgebench::vision {

ImageU8 bilinear_resize_u8(const ImageU8& source, uint32_t target_w, uint32_t target_h) {
    if (source.rows == 0 || source.cols == 0 || source.channels == 0) {
        throw std::invalid_argument("bilinear_resize_u8: empty source image");
    }
    if (target_w == 0 || target_h == 0) {
        throw std::invalid_argument("bilinear_resize_u8: zero target size");
    }
    if (source.cols == target_w && source.rows == target_h) return source;

    ImageU8 out = make_image(target_h, target_w, source.channels);
    const double step_x = static_cast<double>(source.cols) / target_w;
    const double step_y = static_cast<double>(source.rows) / target_h;
    const uint32_t ch = source.channels;

    for (uint32_t dy = 0; dy < target_h; ++dy) {
        const double sy = std::max(0.0, (dy + 0.5) * step_y - 0.5);
        const uint32_t y0 = std::min(static_cast<uint32_t>(sy), source.rows - 1);
        const uint32_t y1 = std::min(y0 + 1, source.rows - 1);
        const double fy = sy - y0;
        for (uint32_t dx = 0; dx < target_w; ++dx) {
            const double sx = std::max(0.0, (dx + 0.5) * step_x - 0.5);
            const uint32_t x0 = std::min(static_cast<uint32_t>(sx), source.cols - 1);
            const uint32_t x1 = std::min(x0 + 1, source.cols - 1);
            const double fx = sx - x0;
            for (uint32_t c = 0; c < ch; ++c) {
                const double top = source.at(y0, x0, c) * (1.0 - fx) + source.at(y0, x1, c) * fx;
                const double bot = source.at(y1, x0, c) * (1.0 - fx) + source.at(y1, x1, c) * fx;
                const double value = top * (1.0 - fy) + bot * fy;
                out.at(dy, dx, c) = static_cast<uint8_t>(std::lround(std::clamp(value, 0.0, 255.0)));
            }
        }
    }
    return out;
}

PreprocessedFrame preprocess(const ImageU8& frame, uint32_t target_w, uint32_t target_h) {
    if (frame.rows == 0 || frame.cols == 0 || frame.channels == 0) {
        throw std::invalid_argument("preprocess: zero-sized frame");
    }
    if (target_w == 0 || target_h == 0) {
        throw std::invalid_argument("preprocess: zero target size");
    }

    const ImageU8 resized = bilinear_resize_u8(frame, target_w, target_h);

    PreprocessedFrame out;
    out.width = target_w;
    out.height = target_h;
    out.channels = frame.channels;
    out.scale_x = static_cast<double>(target_w) / frame.cols;
    out.scale_y = static_cast<double>(target_h) / frame.rows;
    out.data.resize(resized.byte_count());
    kernels::normalize_kernel()(resized.data.data(), out.data.data(), resized.byte_count());
    return out;
}

std::vector<Detection> postprocess(std::span<const RawDetection> raw, double scale_x,
                                   double scale_y, double confidence_threshold,
                                   double nms_threshold) {
    std::vector<Detection> unscaled;
    unscaled.reserve(raw.size());
    for (const RawDetection& det : raw) {
        Detection mapped;
        mapped.box.x0 = det.box.x0 / scale_x;
        mapped.box.x1 = det.box.x1 / scale_x;
        mapped.box.y0 = det.box.y0 / scale_y;
        mapped.box.y1 = det.box.y1 / scale_y;
        mapped.class_id = det.class_id;
        mapped.confidence = det.confidence;
        unscaled.push_back(mapped);
    }
    const std::vector<Detection> kept = filter_by_confidence(unscaled, confidence_threshold);
    return nms(kept, nms_threshold);
}

}  // namespace edgebench::vision
