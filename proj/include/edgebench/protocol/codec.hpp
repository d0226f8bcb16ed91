// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edgebench/common/expected.hpp"
#include "edgebench/protocol/messages.hpp"

// Canonical binary wire encoding. Messages are MessagePack-compatible
// string-keyed maps with fixed key names and a fixed key order, so equal
// messages always encode to identical bytes:
//
//   config: {sid, det, tin, tres, cthr, nthr, runs, echo, w, h}
//   frame:  {sid, fid, rows, cols, ch, et, px, eos}
//   result: {sid, tid, fid, dets, pre, inf, post, img?}
//   det:    {cls, conf, x0, y0, x1, y1}
//   status: {tid, st, msg}
//
// Integers use the shortest MessagePack representation, real values are
// always float64, pixel buffers are bin. Decoders accept keys in any order
// and skip unknown keys.

namespace edgebench::protocol {

enum class MessageKind { config, frame, result, status };

enum class DecodeErrorKind {
    // Buffer ended before the announced structure was complete.
    truncated,
    // Not decodable as the expected map shape (bad type marker, non-string
    // key, wrong value type for a known key, trailing garbage).
    malformed,
    // Decodable map, but the required keys of the expected kind are absent.
    kind_mismatch,
    // Structurally valid, but the decoded message violates an invariant
    // (e.g. declared pixel dimensions disagree with the buffer length).
    invariant_violation,
};

struct DecodeError {
    DecodeErrorKind kind = DecodeErrorKind::malformed;
    std::string detail;
};

const char* to_string(DecodeErrorKind kind);

template <typename T>
using DecodeResult = Expected<T, DecodeError>;

// Encoders validate invariants and throw std::invalid_argument on violation.
std::vector<uint8_t> encode(const SessionConfig& message);
std::vector<uint8_t> encode(const FrameMessage& message);
std::vector<uint8_t> encode(const ResultMessage& message);
std::vector<uint8_t> encode(const StatusMessage& message);

DecodeResult<SessionConfig> decode_config(std::span<const uint8_t> buffer);
DecodeResult<FrameMessage> decode_frame(std::span<const uint8_t> buffer);
DecodeResult<ResultMessage> decode_result(std::span<const uint8_t> buffer);
DecodeResult<StatusMessage> decode_status(std::span<const uint8_t> buffer);

using AnyMessage = std::variant<SessionConfig, FrameMessage, ResultMessage, StatusMessage>;
DecodeResult<AnyMessage> decode_message(std::span<const uint8_t> buffer, MessageKind expected);

}  // namespace edgebench::protocol
