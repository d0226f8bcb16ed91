// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/vision/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace edgebench::vision {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("image " + path.string() + ": " + what);
}

// Skips whitespace and '#' comment lines between PNM header tokens.
std::string next_token(std::istream& in) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    return token;
}

uint32_t parse_dim(std::istream& in, const std::filesystem::path& path, const char* name) {
    const std::string token = next_token(in);
    if (token.empty()) fail(path, std::string("missing ") + name);
    const long value = std::stol(token);
    if (value <= 0 || value > (1 << 20)) fail(path, std::string("bad ") + name + " " + token);
    return static_cast<uint32_t>(value);
}

}  // namespace

ImageU8 make_image(uint32_t rows, uint32_t cols, uint32_t channels, uint8_t fill) {
    ImageU8 image;
    image.rows = rows;
    image.cols = cols;
    image.channels = channels;
    image.data.assign(static_cast<size_t>(rows) * cols * channels, fill);
    return image;
}

ImageU8 load_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");

    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P6") fail(path, "unsupported format '" + magic + "'");
    const bool color = magic == "P6";

    const uint32_t cols = parse_dim(in, path, "width");
    const uint32_t rows = parse_dim(in, path, "height");
    const uint32_t maxval = parse_dim(in, path, "maxval");
    if (maxval != 255) fail(path, "only maxval 255 supported");

    const size_t pixel_count = static_cast<size_t>(rows) * cols;
    std::vector<uint8_t> raw(pixel_count * (color ? 3 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size()) fail(path, "truncated pixel data");

    ImageU8 image = make_image(rows, cols, 3);
    if (color) {
        // Disk order RGB -> memory order BGR.
        for (size_t p = 0; p < pixel_count; ++p) {
            image.data[p * 3 + 0] = raw[p * 3 + 2];
            image.data[p * 3 + 1] = raw[p * 3 + 1];
            image.data[p * 3 + 2] = raw[p * 3 + 0];
        }
    } else {
        for (size_t p = 0; p < pixel_count; ++p) {
            image.data[p * 3 + 0] = raw[p];
            image.data[p * 3 + 1] = raw[p];
            image.data[p * 3 + 2] = raw[p];
        }
    }
    return image;
}

void save_pnm(const std::filesystem::path& path, const ImageU8& image) {
    if (image.channels != 3) throw std::runtime_error("save_pnm expects 3-channel images");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P6\n" << image.cols << " " << image.rows << "\n255\n";
    const size_t pixel_count = static_cast<size_t>(image.rows) * image.cols;
    std::vector<uint8_t> raw(pixel_count * 3);
    for (size_t p = 0; p < pixel_count; ++p) {
        raw[p * 3 + 0] = image.data[p * 3 + 2];
        raw[p * 3 + 1] = image.data[p * 3 + 1];
        raw[p * 3 + 2] = image.data[p * 3 + 0];
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) fail(path, "write failed");
}

void draw_box_outline(ImageU8& image, const Box& box, uint8_t b, uint8_t g, uint8_t r) {
    if (image.channels != 3 || image.rows == 0 || image.cols == 0) return;
    const auto clamp_col = [&](double v) {
        return static_cast<int64_t>(std::clamp(std::lround(v), 0L, static_cast<long>(image.cols) - 1));
    };
    const auto clamp_row = [&](double v) {
        return static_cast<int64_t>(std::clamp(std::lround(v), 0L, static_cast<long>(image.rows) - 1));
    };
    const int64_t c0 = clamp_col(box.x0);
    const int64_t c1 = clamp_col(box.x1);
    const int64_t r0 = clamp_row(box.y0);
    const int64_t r1 = clamp_row(box.y1);
    const auto put = [&](int64_t row, int64_t col) {
        auto* px = &image.data[(static_cast<size_t>(row) * image.cols + col) * 3];
        px[0] = b;
        px[1] = g;
        px[2] = r;
    };
    for (int64_t col = c0; col <= c1; ++col) {
        put(r0, col);
        put(r1, col);
    }
    for (int64_t row = r0; row <= r1; ++row) {
        put(row, c0);
        put(row, c1);
    }
}

}  // namespace edgebench::vision
