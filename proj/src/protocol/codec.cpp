// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/protocol/codec.hpp"

#include <bit>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace edgebench::protocol {

namespace {

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

class Writer {
public:
    std::vector<uint8_t> take() { return std::move(buffer_); }

    void map_header(size_t count) {
        if (count <= 15) {
            byte(0x80 | static_cast<uint8_t>(count));
        } else if (count <= 0xffff) {
            byte(0xde);
            be16(static_cast<uint16_t>(count));
        } else {
            byte(0xdf);
            be32(static_cast<uint32_t>(count));
        }
    }

    void array_header(size_t count) {
        if (count <= 15) {
            byte(0x90 | static_cast<uint8_t>(count));
        } else if (count <= 0xffff) {
            byte(0xdc);
            be16(static_cast<uint16_t>(count));
        } else {
            byte(0xdd);
            be32(static_cast<uint32_t>(count));
        }
    }

    void str(std::string_view text) {
        const size_t n = text.size();
        if (n <= 31) {
            byte(0xa0 | static_cast<uint8_t>(n));
        } else if (n <= 0xff) {
            byte(0xd9);
            byte(static_cast<uint8_t>(n));
        } else if (n <= 0xffff) {
            byte(0xda);
            be16(static_cast<uint16_t>(n));
        } else {
            byte(0xdb);
            be32(static_cast<uint32_t>(n));
        }
        append(text.data(), n);
    }

    void boolean(bool value) { byte(value ? 0xc3 : 0xc2); }

    void uint(uint64_t value) {
        if (value <= 0x7f) {
            byte(static_cast<uint8_t>(value));
        } else if (value <= 0xff) {
            byte(0xcc);
            byte(static_cast<uint8_t>(value));
        } else if (value <= 0xffff) {
            byte(0xcd);
            be16(static_cast<uint16_t>(value));
        } else if (value <= 0xffffffffULL) {
            byte(0xce);
            be32(static_cast<uint32_t>(value));
        } else {
            byte(0xcf);
            be64(value);
        }
    }

    void f64(double value) {
        byte(0xcb);
        be64(std::bit_cast<uint64_t>(value));
    }

    void bin(std::span<const uint8_t> bytes) {
        const size_t n = bytes.size();
        if (n <= 0xff) {
            byte(0xc4);
            byte(static_cast<uint8_t>(n));
        } else if (n <= 0xffff) {
            byte(0xc5);
            be16(static_cast<uint16_t>(n));
        } else {
            byte(0xc6);
            be32(static_cast<uint32_t>(n));
        }
        append(bytes.data(), n);
    }

private:
    void byte(uint8_t b) { buffer_.push_back(b); }
    void be16(uint16_t v) {
        byte(static_cast<uint8_t>(v >> 8));
        byte(static_cast<uint8_t>(v));
    }
    void be32(uint32_t v) {
        byte(static_cast<uint8_t>(v >> 24));
        byte(static_cast<uint8_t>(v >> 16));
        byte(static_cast<uint8_t>(v >> 8));
        byte(static_cast<uint8_t>(v));
    }
    void be64(uint64_t v) {
        be32(static_cast<uint32_t>(v >> 32));
        be32(static_cast<uint32_t>(v));
    }
    void append(const void* data, size_t size) {
        const auto* p = static_cast<const uint8_t*>(data);
        buffer_.insert(buffer_.end(), p, p + size);
    }

    std::vector<uint8_t> buffer_;
};

// ---------------------------------------------------------------------------
// Reader
// ---------------------------------------------------------------------------

struct DecodeException {
    DecodeErrorKind kind;
    std::string detail;
};

[[noreturn]] void raise(DecodeErrorKind kind, std::string detail) {
    throw DecodeException{kind, std::move(detail)};
}

class Reader {
public:
    explicit Reader(std::span<const uint8_t> buffer) : buffer_(buffer) {}

    bool at_end() const { return pos_ == buffer_.size(); }

    size_t map_header() {
        const uint8_t marker = byte();
        if ((marker & 0xf0) == 0x80) return marker & 0x0f;
        if (marker == 0xde) return be16();
        if (marker == 0xdf) return be32();
        raise(DecodeErrorKind::malformed, "expected map marker");
    }

    size_t array_header() {
        const uint8_t marker = byte();
        if ((marker & 0xf0) == 0x90) return marker & 0x0f;
        if (marker == 0xdc) return be16();
        if (marker == 0xdd) return be32();
        raise(DecodeErrorKind::malformed, "expected array marker");
    }

    std::string str(const char* what) {
        const uint8_t marker = byte();
        size_t n = 0;
        if ((marker & 0xe0) == 0xa0) {
            n = marker & 0x1f;
        } else if (marker == 0xd9) {
            n = byte();
        } else if (marker == 0xda) {
            n = be16();
        } else if (marker == 0xdb) {
            n = be32();
        } else {
            raise(DecodeErrorKind::malformed, std::string("expected string for ") + what);
        }
        const uint8_t* p = take(n);
        return std::string(reinterpret_cast<const char*>(p), n);
    }

    uint64_t uint(const char* what) {
        const uint8_t marker = byte();
        if (marker <= 0x7f) return marker;
        switch (marker) {
            case 0xcc: return byte();
            case 0xcd: return be16();
            case 0xce: return be32();
            case 0xcf: return be64();
            case 0xd0: return from_signed(static_cast<int8_t>(byte()), what);
            case 0xd1: return from_signed(static_cast<int16_t>(be16()), what);
            case 0xd2: return from_signed(static_cast<int32_t>(be32()), what);
            case 0xd3: return from_signed(static_cast<int64_t>(be64()), what);
            default: break;
        }
        raise(DecodeErrorKind::malformed, std::string("expected unsigned integer for ") + what);
    }

    double f64(const char* what) {
        const uint8_t marker = byte();
        if (marker == 0xcb) return std::bit_cast<double>(be64());
        if (marker == 0xca) {
            return static_cast<double>(std::bit_cast<float>(be32()));
        }
        // Tolerate integer-encoded numeric fields from foreign encoders.
        if (marker <= 0x7f) return static_cast<double>(marker);
        if (marker >= 0xe0) return static_cast<double>(static_cast<int8_t>(marker));
        switch (marker) {
            case 0xcc: return static_cast<double>(byte());
            case 0xcd: return static_cast<double>(be16());
            case 0xce: return static_cast<double>(be32());
            case 0xcf: return static_cast<double>(be64());
            case 0xd0: return static_cast<double>(static_cast<int8_t>(byte()));
            case 0xd1: return static_cast<double>(static_cast<int16_t>(be16()));
            case 0xd2: return static_cast<double>(static_cast<int32_t>(be32()));
            case 0xd3: return static_cast<double>(static_cast<int64_t>(be64()));
            default: break;
        }
        raise(DecodeErrorKind::malformed, std::string("expected number for ") + what);
    }

    bool boolean(const char* what) {
        const uint8_t marker = byte();
        if (marker == 0xc2) return false;
        if (marker == 0xc3) return true;
        raise(DecodeErrorKind::malformed, std::string("expected bool for ") + what);
    }

    std::vector<uint8_t> bin(const char* what) {
        const uint8_t marker = byte();
        size_t n = 0;
        if (marker == 0xc4) {
            n = byte();
        } else if (marker == 0xc5) {
            n = be16();
        } else if (marker == 0xc6) {
            n = be32();
        } else {
            raise(DecodeErrorKind::malformed, std::string("expected binary for ") + what);
        }
        const uint8_t* p = take(n);
        return std::vector<uint8_t>(p, p + n);
    }

    void skip_value() {
        const uint8_t marker = byte();
        if (marker <= 0x7f || marker >= 0xe0) return;                    // fixint
        if ((marker & 0xe0) == 0xa0) { take(marker & 0x1f); return; }    // fixstr
        if ((marker & 0xf0) == 0x80) { skip_entries((marker & 0x0f) * 2); return; }
        if ((marker & 0xf0) == 0x90) { skip_entries(marker & 0x0f); return; }
        switch (marker) {
            case 0xc0: case 0xc2: case 0xc3: return;
            case 0xc4: case 0xd9: take(byte()); return;
            case 0xc5: case 0xda: take(be16()); return;
            case 0xc6: case 0xdb: take(be32()); return;
            case 0xc7: take(static_cast<size_t>(byte()) + 1); return;    // ext8
            case 0xc8: take(static_cast<size_t>(be16()) + 1); return;
            case 0xc9: take(static_cast<size_t>(be32()) + 1); return;
            case 0xca: take(4); return;
            case 0xcb: take(8); return;
            case 0xcc: case 0xd0: take(1); return;
            case 0xcd: case 0xd1: take(2); return;
            case 0xce: case 0xd2: take(4); return;
            case 0xcf: case 0xd3: take(8); return;
            case 0xd4: take(2); return;                                  // fixext1
            case 0xd5: take(3); return;
            case 0xd6: take(5); return;
            case 0xd7: take(9); return;
            case 0xd8: take(17); return;
            case 0xdc: skip_entries(be16()); return;
            case 0xdd: skip_entries(be32()); return;
            case 0xde: skip_entries(static_cast<size_t>(be16()) * 2); return;
            case 0xdf: skip_entries(static_cast<size_t>(be32()) * 2); return;
            default: break;
        }
        raise(DecodeErrorKind::malformed, "unknown type marker");
    }

private:
    static uint64_t from_signed(int64_t value, const char* what) {
        if (value < 0) {
            raise(DecodeErrorKind::malformed, std::string("negative value for ") + what);
        }
        return static_cast<uint64_t>(value);
    }

    void skip_entries(size_t count) {
        for (size_t i = 0; i < count; ++i) skip_value();
    }

    const uint8_t* take(size_t n) {
        if (buffer_.size() - pos_ < n) {
            raise(DecodeErrorKind::truncated,
                  "buffer ends after " + std::to_string(buffer_.size()) + " bytes");
        }
        const uint8_t* p = buffer_.data() + pos_;
        pos_ += n;
        return p;
    }

    uint8_t byte() { return *take(1); }
    uint16_t be16() {
        const uint8_t* p = take(2);
        return static_cast<uint16_t>((p[0] << 8) | p[1]);
    }
    uint32_t be32() {
        const uint8_t* p = take(4);
        return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
               (static_cast<uint32_t>(p[2]) << 8) | p[3];
    }
    uint64_t be64() {
        const uint64_t hi = be32();
        return (hi << 32) | be32();
    }

    std::span<const uint8_t> buffer_;
    size_t pos_ = 0;
};

uint32_t narrow_u32(uint64_t value, const char* what) {
    if (value > std::numeric_limits<uint32_t>::max()) {
        raise(DecodeErrorKind::invariant_violation, std::string(what) + " exceeds 32-bit range");
    }
    return static_cast<uint32_t>(value);
}

int narrow_class_id(uint64_t value) {
    if (value > static_cast<uint64_t>(std::numeric_limits<int>::max())) {
        raise(DecodeErrorKind::invariant_violation, "class id exceeds int range");
    }
    return static_cast<int>(value);
}

// ---------------------------------------------------------------------------
// Per-kind encoders
// ---------------------------------------------------------------------------

void write_detection(Writer& writer, const vision::Detection& det) {
    writer.map_header(6);
    writer.str("cls");
    writer.uint(static_cast<uint64_t>(det.class_id));
    writer.str("conf");
    writer.f64(det.confidence);
    writer.str("x0");
    writer.f64(det.box.x0);
    writer.str("y0");
    writer.f64(det.box.y0);
    writer.str("x1");
    writer.f64(det.box.x1);
    writer.str("y1");
    writer.f64(det.box.y1);
}

void write_image_payload(Writer& writer, const ImagePayload& image) {
    writer.map_header(5);
    writer.str("rows");
    writer.uint(image.rows);
    writer.str("cols");
    writer.uint(image.cols);
    writer.str("ch");
    writer.uint(image.channels);
    writer.str("et");
    writer.uint(static_cast<uint64_t>(image.element_type));
    writer.str("px");
    writer.bin(image.pixel_data);
}

// ---------------------------------------------------------------------------
// Per-kind decoders
// ---------------------------------------------------------------------------

template <typename Message>
DecodeResult<Message> run_decode(std::span<const uint8_t> buffer,
                                 Message (*parse)(Reader&)) {
    try {
        Reader reader(buffer);
        Message message = parse(reader);
        if (!reader.at_end()) {
            raise(DecodeErrorKind::malformed, "trailing bytes after message");
        }
        try {
            message.validate();
        } catch (const std::invalid_argument& err) {
            raise(DecodeErrorKind::invariant_violation, err.what());
        }
        return message;
    } catch (const DecodeException& err) {
        return DecodeError{err.kind, err.detail};
    }
}

void require_keys(uint32_t seen, uint32_t required, const char* const* names, size_t count) {
    if ((seen & required) == required) return;
    std::string missing = "missing keys:";
    for (size_t i = 0; i < count; ++i) {
        if ((required & (1u << i)) != 0 && (seen & (1u << i)) == 0) {
            missing += ' ';
            missing += names[i];
        }
    }
    raise(DecodeErrorKind::kind_mismatch, missing);
}

ElementType parse_element_type(uint64_t value) {
    if (value != 0) {
        raise(DecodeErrorKind::invariant_violation,
              "unsupported element type " + std::to_string(value));
    }
    return ElementType::u8;
}

SessionConfig parse_config(Reader& reader) {
    static constexpr const char* kKeys[] = {"sid", "det",  "tin",  "tres", "cthr",
                                            "nthr", "runs", "echo", "w",    "h"};
    SessionConfig message;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "sid") {
            message.session_id = reader.str("sid");
            seen |= 1u << 0;
        } else if (key == "det") {
            message.detector_name = reader.str("det");
            seen |= 1u << 1;
        } else if (key == "tin") {
            message.input_topic = reader.str("tin");
            seen |= 1u << 2;
        } else if (key == "tres") {
            message.result_topic = reader.str("tres");
            seen |= 1u << 3;
        } else if (key == "cthr") {
            message.confidence_threshold = reader.f64("cthr");
            seen |= 1u << 4;
        } else if (key == "nthr") {
            message.nms_threshold = reader.f64("nthr");
            seen |= 1u << 5;
        } else if (key == "runs") {
            message.run_count = narrow_u32(reader.uint("runs"), "runs");
            seen |= 1u << 6;
        } else if (key == "echo") {
            message.echo_annotated_images = reader.boolean("echo");
            seen |= 1u << 7;
        } else if (key == "w") {
            message.model_input_width = narrow_u32(reader.uint("w"), "w");
            seen |= 1u << 8;
        } else if (key == "h") {
            message.model_input_height = narrow_u32(reader.uint("h"), "h");
            seen |= 1u << 9;
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0x3ff, kKeys, 10);
    return message;
}

FrameMessage parse_frame(Reader& reader) {
    static constexpr const char* kKeys[] = {"sid", "fid", "rows", "cols",
                                            "ch",  "et",  "px",   "eos"};
    FrameMessage message;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "sid") {
            message.session_id = reader.str("sid");
            seen |= 1u << 0;
        } else if (key == "fid") {
            message.frame_id = reader.uint("fid");
            seen |= 1u << 1;
        } else if (key == "rows") {
            message.rows = narrow_u32(reader.uint("rows"), "rows");
            seen |= 1u << 2;
        } else if (key == "cols") {
            message.cols = narrow_u32(reader.uint("cols"), "cols");
            seen |= 1u << 3;
        } else if (key == "ch") {
            message.channels = narrow_u32(reader.uint("ch"), "ch");
            seen |= 1u << 4;
        } else if (key == "et") {
            message.element_type = parse_element_type(reader.uint("et"));
            seen |= 1u << 5;
        } else if (key == "px") {
            message.pixel_data = reader.bin("px");
            seen |= 1u << 6;
        } else if (key == "eos") {
            message.end_of_stream = reader.boolean("eos");
            seen |= 1u << 7;
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0xff, kKeys, 8);
    return message;
}

ImagePayload parse_image_payload(Reader& reader) {
    static constexpr const char* kKeys[] = {"rows", "cols", "ch", "et", "px"};
    ImagePayload image;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "rows") {
            image.rows = narrow_u32(reader.uint("rows"), "rows");
            seen |= 1u << 0;
        } else if (key == "cols") {
            image.cols = narrow_u32(reader.uint("cols"), "cols");
            seen |= 1u << 1;
        } else if (key == "ch") {
            image.channels = narrow_u32(reader.uint("ch"), "ch");
            seen |= 1u << 2;
        } else if (key == "et") {
            image.element_type = parse_element_type(reader.uint("et"));
            seen |= 1u << 3;
        } else if (key == "px") {
            image.pixel_data = reader.bin("px");
            seen |= 1u << 4;
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0x1f, kKeys, 5);
    return image;
}

vision::Detection parse_detection(Reader& reader) {
    static constexpr const char* kKeys[] = {"cls", "conf", "x0", "y0", "x1", "y1"};
    vision::Detection det;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "cls") {
            det.class_id = narrow_class_id(reader.uint("cls"));
            seen |= 1u << 0;
        } else if (key == "conf") {
            det.confidence = reader.f64("conf");
            seen |= 1u << 1;
        } else if (key == "x0") {
            det.box.x0 = reader.f64("x0");
            seen |= 1u << 2;
        } else if (key == "y0") {
            det.box.y0 = reader.f64("y0");
            seen |= 1u << 3;
        } else if (key == "x1") {
            det.box.x1 = reader.f64("x1");
            seen |= 1u << 4;
        } else if (key == "y1") {
            det.box.y1 = reader.f64("y1");
            seen |= 1u << 5;
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0x3f, kKeys, 6);
    return det;
}

ResultMessage parse_result(Reader& reader) {
    static constexpr const char* kKeys[] = {"sid", "tid", "fid", "dets",
                                            "pre", "inf", "post"};
    ResultMessage message;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "sid") {
            message.session_id = reader.str("sid");
            seen |= 1u << 0;
        } else if (key == "tid") {
            message.target_id = reader.str("tid");
            seen |= 1u << 1;
        } else if (key == "fid") {
            message.frame_id = reader.uint("fid");
            seen |= 1u << 2;
        } else if (key == "dets") {
            const size_t count = reader.array_header();
            message.detections.reserve(count);
            for (size_t d = 0; d < count; ++d) message.detections.push_back(parse_detection(reader));
            seen |= 1u << 3;
        } else if (key == "pre") {
            message.pre_ms = reader.f64("pre");
            seen |= 1u << 4;
        } else if (key == "inf") {
            message.infer_ms = reader.f64("inf");
            seen |= 1u << 5;
        } else if (key == "post") {
            message.post_ms = reader.f64("post");
            seen |= 1u << 6;
        } else if (key == "img") {
            message.annotated_image = parse_image_payload(reader);
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0x7f, kKeys, 7);
    return message;
}

StatusMessage parse_status(Reader& reader) {
    static constexpr const char* kKeys[] = {"tid", "st", "msg"};
    StatusMessage message;
    uint32_t seen = 0;
    const size_t entries = reader.map_header();
    for (size_t i = 0; i < entries; ++i) {
        const std::string key = reader.str("map key");
        if (key == "tid") {
            message.target_id = reader.str("tid");
            seen |= 1u << 0;
        } else if (key == "st") {
            const std::string state = reader.str("st");
            if (state == "ready") {
                message.state = AgentState::ready;
            } else if (state == "configured") {
                message.state = AgentState::configured;
            } else if (state == "error") {
                message.state = AgentState::error;
            } else {
                raise(DecodeErrorKind::invariant_violation, "unknown agent state '" + state + "'");
            }
            seen |= 1u << 1;
        } else if (key == "msg") {
            message.detail = reader.str("msg");
            seen |= 1u << 2;
        } else {
            reader.skip_value();
        }
    }
    require_keys(seen, 0x7, kKeys, 3);
    return message;
}

}  // namespace

const char* to_string(DecodeErrorKind kind) {
    switch (kind) {
        case DecodeErrorKind::truncated: return "truncated";
        case DecodeErrorKind::malformed: return "malformed";
        case DecodeErrorKind::kind_mismatch: return "kind_mismatch";
        case DecodeErrorKind::invariant_violation: return "invariant_violation";
    }
    return "?";
}

std::vector<uint8_t> encode(const SessionConfig& message) {
    message.validate();
    Writer writer;
    writer.map_header(10);
    writer.str("sid");
    writer.str(message.session_id);
    writer.str("det");
    writer.str(message.detector_name);
    writer.str("tin");
    writer.str(message.input_topic);
    writer.str("tres");
    writer.str(message.result_topic);
    writer.str("cthr");
    writer.f64(message.confidence_threshold);
    writer.str("nthr");
    writer.f64(message.nms_threshold);
    writer.str("runs");
    writer.uint(message.run_count);
    writer.str("echo");
    writer.boolean(message.echo_annotated_images);
    writer.str("w");
    writer.uint(message.model_input_width);
    writer.str("h");
    writer.uint(message.model_input_height);
    return writer.take();
}

std::vector<uint8_t> encode(const FrameMessage& message) {
    message.validate();
    Writer writer;
    writer.map_header(8);
    writer.str("sid");
    writer.str(message.session_id);
    writer.str("fid");
    writer.uint(message.frame_id);
    writer.str("rows");
    writer.uint(message.rows);
    writer.str("cols");
    writer.uint(message.cols);
    writer.str("ch");
    writer.uint(message.channels);
    writer.str("et");
    writer.uint(static_cast<uint64_t>(message.element_type));
    writer.str("px");
    writer.bin(message.pixel_data);
    writer.str("eos");
    writer.boolean(message.end_of_stream);
    return writer.take();
}

std::vector<uint8_t> encode(const ResultMessage& message) {
    message.validate();
    Writer writer;
    writer.map_header(message.annotated_image ? 8 : 7);
    writer.str("sid");
    writer.str(message.session_id);
    writer.str("tid");
    writer.str(message.target_id);
    writer.str("fid");
    writer.uint(message.frame_id);
    writer.str("dets");
    writer.array_header(message.detections.size());
    for (const vision::Detection& det : message.detections) write_detection(writer, det);
    writer.str("pre");
    writer.f64(message.pre_ms);
    writer.str("inf");
    writer.f64(message.infer_ms);
    writer.str("post");
    writer.f64(message.post_ms);
    if (message.annotated_image) {
        writer.str("img");
        write_image_payload(writer, *message.annotated_image);
    }
    return writer.take();
}

std::vector<uint8_t> encode(const StatusMessage& message) {
    message.validate();
    Writer writer;
    writer.map_header(3);
    writer.str("tid");
    writer.str(message.target_id);
    writer.str("st");
    writer.str(to_string(message.state));
    writer.str("msg");
    writer.str(message.detail);
    return writer.take();
}

DecodeResult<SessionConfig> decode_config(std::span<const uint8_t> buffer) {
    return run_decode<SessionConfig>(buffer, [](Reader& reader) { return parse_config(reader); });
}

DecodeResult<FrameMessage> decode_frame(std::span<const uint8_t> buffer) {
    return run_decode<FrameMessage>(buffer, [](Reader& reader) { return parse_frame(reader); });
}

DecodeResult<ResultMessage> decode_result(std::span<const uint8_t> buffer) {
    return run_decode<ResultMessage>(buffer, [](Reader& reader) { return parse_result(reader); });
}

DecodeResult<StatusMessage> decode_status(std::span<const uint8_t> buffer) {
    return run_decode<StatusMessage>(buffer, [](Reader& reader) { return parse_status(reader); });
}

DecodeResult<AnyMessage> decode_message(std::span<const uint8_t> buffer, MessageKind expected) {
    switch (expected) {
        case MessageKind::config: {
            auto result = decode_config(buffer);
            if (!result) return result.error();
            return AnyMessage{std::move(result.value())};
        }
        case MessageKind::frame: {
            auto result = decode_frame(buffer);
            if (!result) return result.error();
            return AnyMessage{std::move(result.value())};
        }
        case MessageKind::result: {
            auto result = decode_result(buffer);
            if (!result) return result.error();
            return AnyMessage{std::move(result.value())};
        }
        case MessageKind::status: {
            auto result = decode_status(buffer);
            if (!result) return result.error();
            return AnyMessage{std::move(result.value())};
        }
    }
    return DecodeError{DecodeErrorKind::malformed, "unknown message kind"};
}

}  // namespace edgebench::protocol
