// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "edgebench/vision/geometry.hpp"

namespace edgebench::vision {

// 8-bit image, row-major, interleaved channels, channel order BGR for
// 3-channel data.
struct ImageU8 {
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t channels = 0;
    std::vector<uint8_t> data;

    size_t byte_count() const {
        return static_cast<size_t>(rows) * cols * channels;
    }
    uint8_t& at(uint32_t row, uint32_t col, uint32_t channel) {
        return data[(static_cast<size_t>(row) * cols + col) * channels + channel];
    }
    uint8_t at(uint32_t row, uint32_t col, uint32_t channel) const {
        return data[(static_cast<size_t>(row) * cols + col) * channels + channel];
    }
};

ImageU8 make_image(uint32_t rows, uint32_t cols, uint32_t channels, uint8_t fill = 0);

// Binary PNM readers/writers. P6 (color, stored RGB on disk) is converted to
// the in-memory BGR layout; P5 (gray) is replicated to three channels.
ImageU8 load_pnm(const std::filesystem::path& path);
void save_pnm(const std::filesystem::path& path, const ImageU8& image);

// 1-px outline, clipped to image bounds.
void draw_box_outline(ImageU8& image, const Box& box, uint8_t b, uint8_t g, uint8_t r);

}  // namespace edgebench::vision
