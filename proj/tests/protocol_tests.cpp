// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "edgebench/protocol/codec.hpp"
#include "edgebench/protocol/topics.hpp"

using namespace edgebench;
using namespace edgebench::protocol;

namespace {

SessionConfig sample_config() {
    SessionConfig config;
    config.session_id = "s1";
    config.detector_name = "replay";
    config.input_topic = "bench/s1/input";
    config.result_topic = "bench/s1/result";
    config.confidence_threshold = 0.25;
    config.nms_threshold = 0.45;
    config.run_count = 6;
    config.echo_annotated_images = false;
    config.model_input_width = 512;
    config.model_input_height = 512;
    return config;
}

FrameMessage sample_frame(uint64_t frame_id = 7) {
    FrameMessage frame;
    frame.session_id = "s1";
    frame.frame_id = frame_id;
    frame.rows = 2;
    frame.cols = 2;
    frame.channels = 3;
    frame.pixel_data = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    frame.end_of_stream = false;
    return frame;
}

ResultMessage sample_result() {
    ResultMessage result;
    result.session_id = "s1";
    result.target_id = "t1";
    result.frame_id = 3;
    result.detections.push_back(
        vision::Detection{vision::Box{1.0, 2.0, 10.0, 12.0}, 2, 0.875});
    result.pre_ms = 8.78;
    result.infer_ms = 22.0;
    result.post_ms = 39.45;
    return result;
}

std::string rand_id(std::mt19937_64& rng, size_t max_len) {
    static constexpr char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789_-";
    std::uniform_int_distribution<size_t> len_dist(1, max_len);
    std::uniform_int_distribution<size_t> ch_dist(0, sizeof(alphabet) - 2);
    std::string out;
    const size_t len = len_dist(rng);
    for (size_t i = 0; i < len; ++i) out.push_back(alphabet[ch_dist(rng)]);
    return out;
}

FrameMessage random_frame(std::mt19937_64& rng) {
    FrameMessage frame;
    frame.session_id = rand_id(rng, 12);
    frame.frame_id = rng() % 100000;
    if (rng() % 8 == 0) {
        frame.end_of_stream = true;
        return frame;
    }
    frame.rows = 1 + static_cast<uint32_t>(rng() % 8);
    frame.cols = 1 + static_cast<uint32_t>(rng() % 8);
    frame.channels = 3;
    frame.pixel_data.resize(static_cast<size_t>(frame.rows) * frame.cols * frame.channels);
    for (auto& byte : frame.pixel_data) byte = static_cast<uint8_t>(rng() & 0xff);
    return frame;
}

ResultMessage random_result(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coord(0.0, 640.0);
    std::uniform_real_distribution<double> ms(0.0, 200.0);
    ResultMessage result;
    result.session_id = rand_id(rng, 12);
    result.target_id = rand_id(rng, 8);
    result.frame_id = rng() % 100000;
    const size_t count = rng() % 20;
    for (size_t i = 0; i < count; ++i) {
        vision::Detection det;
        const double x = coord(rng);
        const double y = coord(rng);
        det.box = vision::Box{x, y, x + unit(rng) * 50.0, y + unit(rng) * 50.0};
        det.class_id = static_cast<int>(rng() % 80);
        det.confidence = unit(rng);
        result.detections.push_back(det);
    }
    result.pre_ms = ms(rng);
    result.infer_ms = ms(rng);
    result.post_ms = ms(rng);
    if (rng() % 5 == 0) {
        ImagePayload echo;
        echo.rows = 2;
        echo.cols = 3;
        echo.channels = 3;
        echo.pixel_data.resize(18);
        for (auto& byte : echo.pixel_data) byte = static_cast<uint8_t>(rng() & 0xff);
        result.annotated_image = echo;
    }
    return result;
}

StatusMessage random_status(std::mt19937_64& rng) {
    StatusMessage status;
    status.target_id = rand_id(rng, 8);
    switch (rng() % 3) {
        case 0: status.state = AgentState::ready; break;
        case 1: status.state = AgentState::configured; break;
        default:
            status.state = AgentState::error;
            status.detail = "detail " + rand_id(rng, 6);
            break;
    }
    return status;
}

SessionConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SessionConfig config;
    config.session_id = rand_id(rng, 12);
    config.detector_name = rand_id(rng, 10);
    config.input_topic = "bench/" + config.session_id + "/input";
    config.result_topic = "bench/" + config.session_id + "/result";
    config.confidence_threshold = unit(rng);
    config.nms_threshold = unit(rng);
    config.run_count = 1 + static_cast<uint32_t>(rng() % 9);
    config.echo_annotated_images = (rng() & 1) != 0;
    config.model_input_width = 64 + static_cast<uint32_t>(rng() % 1024);
    config.model_input_height = 64 + static_cast<uint32_t>(rng() % 1024);
    return config;
}

}  // namespace

TEST_CASE("codec: round-trip identity for each message kind") {
    const SessionConfig config = sample_config();
    auto config_back = decode_config(encode(config));
    REQUIRE(config_back.has_value());
    CHECK(config_back.value() == config);

    const FrameMessage frame = sample_frame();
    auto frame_back = decode_frame(encode(frame));
    REQUIRE(frame_back.has_value());
    CHECK(frame_back.value() == frame);

    const ResultMessage result = sample_result();
    auto result_back = decode_result(encode(result));
    REQUIRE(result_back.has_value());
    CHECK(result_back.value() == result);

    StatusMessage status;
    status.target_id = "t1";
    status.state = AgentState::configured;
    auto status_back = decode_status(encode(status));
    REQUIRE(status_back.has_value());
    CHECK(status_back.value() == status);
}

TEST_CASE("codec: encode(decode(b)) reproduces canonical bytes") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const ResultMessage message = random_result(rng);
        const auto bytes = encode(message);
        auto decoded = decode_result(bytes);
        REQUIRE(decoded.has_value());
        CHECK(encode(decoded.value()) == bytes);
    }
}

TEST_CASE("codec: canonical encoding - equal messages iff equal bytes") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const FrameMessage a = random_frame(rng);
        const FrameMessage b = random_frame(rng);
        const bool equal_messages = a == b;
        const bool equal_bytes = encode(a) == encode(b);
        CHECK(equal_messages == equal_bytes);
        CHECK(encode(a) == encode(a));
    }
}

TEST_CASE("codec: frame pixel length preserved") {
    const FrameMessage frame = sample_frame();
    auto decoded = decode_frame(encode(frame));
    REQUIRE(decoded.has_value());
    CHECK(decoded.value().pixel_data.size() == 12);
}

TEST_CASE("codec: two frames differing only in frame_id differ only at the id byte") {
    const FrameMessage a = sample_frame(3);
    const FrameMessage b = sample_frame(7);
    const auto bytes_a = encode(a);
    const auto bytes_b = encode(b);
    REQUIRE(bytes_a.size() == bytes_b.size());
    std::vector<size_t> diff_positions;
    for (size_t i = 0; i < bytes_a.size(); ++i) {
        if (bytes_a[i] != bytes_b[i]) diff_positions.push_back(i);
    }
    REQUIRE(diff_positions.size() == 1);
    CHECK(bytes_a[diff_positions[0]] == 3);
    CHECK(bytes_b[diff_positions[0]] == 7);
}

TEST_CASE("codec: truncated buffer rejected with truncation error") {
    const auto bytes = encode(sample_frame());
    const std::span<const uint8_t> half(bytes.data(), bytes.size() / 2);
    auto decoded = decode_frame(half);
    REQUIRE(!decoded.has_value());
    CHECK(decoded.error().kind == DecodeErrorKind::truncated);
}

TEST_CASE("codec: declared size inconsistent with pixel bytes rejected as invariant violation") {
    FrameMessage frame = sample_frame();
    auto bytes = encode(frame);
    // Hand-edit the encoded rows value (fixint) from 2 to 4: the key "rows"
    // is followed directly by its one-byte value.
    const std::vector<uint8_t> key = {0xa4, 'r', 'o', 'w', 's'};
    auto it = std::search(bytes.begin(), bytes.end(), key.begin(), key.end());
    REQUIRE(it != bytes.end());
    *(it + static_cast<ptrdiff_t>(key.size())) = 4;
    auto decoded = decode_frame(bytes);
    REQUIRE(!decoded.has_value());
    CHECK(decoded.error().kind == DecodeErrorKind::invariant_violation);
}

TEST_CASE("codec: kind mismatch distinguished") {
    const auto result_bytes = encode(sample_result());
    auto as_frame = decode_frame(result_bytes);
    REQUIRE(!as_frame.has_value());
    CHECK(as_frame.error().kind == DecodeErrorKind::kind_mismatch);

    auto via_variant = decode_message(result_bytes, MessageKind::result);
    CHECK(via_variant.has_value());
}

TEST_CASE("codec: malformed input rejected, never crashes") {
    const std::vector<uint8_t> not_a_map = {0xc1, 0x00, 0x01};
    auto decoded = decode_status(not_a_map);
    REQUIRE(!decoded.has_value());
    CHECK(decoded.error().kind == DecodeErrorKind::malformed);

    // Trailing garbage after a valid message.
    auto bytes = encode(sample_frame());
    bytes.push_back(0x00);
    auto with_garbage = decode_frame(bytes);
    REQUIRE(!with_garbage.has_value());
    CHECK(with_garbage.error().kind == DecodeErrorKind::malformed);
}

TEST_CASE("codec: unknown keys are skipped for forward compatibility") {
    // {tid:"t1", st:"ready", msg:"", extra: {nested:[1,2]}}
    std::vector<uint8_t> bytes;
    bytes.push_back(0x84);  // fixmap 4
    const auto put_str = [&bytes](std::string_view s) {
        bytes.push_back(static_cast<uint8_t>(0xa0 | s.size()));
        bytes.insert(bytes.end(), s.begin(), s.end());
    };
    put_str("tid");
    put_str("t1");
    put_str("st");
    put_str("ready");
    put_str("msg");
    put_str("");
    put_str("extra");
    bytes.push_back(0x81);  // fixmap 1
    put_str("nested");
    bytes.push_back(0x92);  // fixarray 2
    bytes.push_back(0x01);
    bytes.push_back(0x02);

    auto decoded = decode_status(bytes);
    REQUIRE(decoded.has_value());
    CHECK(decoded.value().target_id == "t1");
    CHECK(decoded.value().state == AgentState::ready);
}

TEST_CASE("codec: encoding refuses invariant-violating messages") {
    SessionConfig config = sample_config();
    config.confidence_threshold = 1.5;
    CHECK_THROWS_AS((void)encode(config), std::invalid_argument);

    SessionConfig same_topics = sample_config();
    same_topics.result_topic = same_topics.input_topic;
    CHECK_THROWS_AS((void)encode(same_topics), std::invalid_argument);

    SessionConfig zero_runs = sample_config();
    zero_runs.run_count = 0;
    CHECK_THROWS_AS((void)encode(zero_runs), std::invalid_argument);

    FrameMessage bad_frame = sample_frame();
    bad_frame.pixel_data.pop_back();
    CHECK_THROWS_AS((void)encode(bad_frame), std::invalid_argument);

    FrameMessage eos;
    eos.session_id = "s1";
    eos.end_of_stream = true;
    eos.pixel_data = {1};
    CHECK_THROWS_AS((void)encode(eos), std::invalid_argument);

    ResultMessage bad_result = sample_result();
    bad_result.pre_ms = -1.0;
    CHECK_THROWS_AS((void)encode(bad_result), std::invalid_argument);

    StatusMessage bare_error;
    bare_error.target_id = "t1";
    bare_error.state = AgentState::error;
    CHECK_THROWS_AS((void)encode(bare_error), std::invalid_argument);
}

TEST_CASE("codec: property round-trip over randomized messages") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        switch (i % 4) {
            case 0: {
                const auto message = random_config(rng);
                auto back = decode_config(encode(message));
                REQUIRE(back.has_value());
                CHECK(back.value() == message);
                break;
            }
            case 1: {
                const auto message = random_frame(rng);
                auto back = decode_frame(encode(message));
                REQUIRE(back.has_value());
                CHECK(back.value() == message);
                break;
            }
            case 2: {
                const auto message = random_result(rng);
                auto back = decode_result(encode(message));
                REQUIRE(back.has_value());
                CHECK(back.value() == message);
                break;
            }
            default: {
                const auto message = random_status(rng);
                auto back = decode_status(encode(message));
                REQUIRE(back.has_value());
                CHECK(back.value() == message);
                break;
            }
        }
    }
}

TEST_CASE("topics: scheme fixtures") {
    CHECK(topic_for("s1", TopicKind::input) == "bench/s1/input");
    CHECK(topic_for("s1", TopicKind::config) == "bench/s1/config");
    CHECK(topic_for("s1", TopicKind::result, "t7") == "bench/s1/result/t7");
    CHECK(topic_for("s1", TopicKind::status, "t7") == "bench/s1/status/t7");
    CHECK(topic_for("s1", TopicKind::result, "a") != topic_for("s1", TopicKind::result, "b"));
}

TEST_CASE("topics: validation") {
    CHECK_THROWS_AS((void)topic_for("", TopicKind::input), std::invalid_argument);
    CHECK_THROWS_AS((void)topic_for("s/1", TopicKind::input), std::invalid_argument);
    CHECK_THROWS_AS((void)topic_for("s1", TopicKind::result), std::invalid_argument);
    CHECK_THROWS_AS((void)topic_for("s1", TopicKind::status, "t#"), std::invalid_argument);
}

TEST_CASE("topics: injectivity over (session, kind, target)") {
    std::mt19937_64 rng(5);
    std::map<std::string, std::tuple<std::string, TopicKind, std::string>> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::string sid = rand_id(rng, 6);
        const TopicKind kind = static_cast<TopicKind>(rng() % 4);
        const bool needs_target = kind == TopicKind::result || kind == TopicKind::status;
        const std::string tid = needs_target ? rand_id(rng, 6) : "";
        const std::string topic = topic_for(sid, kind, tid);
        const auto key = std::make_tuple(sid, kind, tid);
        const auto it = seen.find(topic);
        if (it != seen.end()) {
            CHECK(it->second == key);
        } else {
            seen.emplace(topic, key);
        }
    }
}

TEST_CASE("topics: single-level wildcard matching") {
    CHECK(topic_matches("bench/+/config", "bench/s1/config"));
    CHECK(!topic_matches("bench/+/config", "bench/s1/input"));
    CHECK(!topic_matches("bench/+/config", "bench/s1/x/config"));
    CHECK(topic_matches("bench/s1/result/t1", "bench/s1/result/t1"));
    CHECK(!topic_matches("bench/s1/result/t1", "bench/s1/result/t2"));
}
