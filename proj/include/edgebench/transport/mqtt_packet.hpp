// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// MQTT 3.1.1 control-packet encoding/decoding, kept free of socket code so
// it can be tested in isolation. Only the packet types this project uses
// are implemented.

namespace edgebench::transport::mqtt {

enum class PacketType : uint8_t {
    connect = 1,
    connack = 2,
    publish = 3,
    puback = 4,
    subscribe = 8,
    suback = 9,
    unsubscribe = 10,
    unsuback = 11,
    pingreq = 12,
    pingresp = 13,
    disconnect = 14,
};

struct RawPacket {
    PacketType type;
    uint8_t flags = 0;
    std::vector<uint8_t> body;
};

struct PacketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- encoders ---------------------------------------------------------------

std::vector<uint8_t> encode_connect(const std::string& client_id, uint16_t keepalive_s,
                                    bool clean_session = true);
std::vector<uint8_t> encode_connack(uint8_t return_code, bool session_present = false);
std::vector<uint8_t> encode_publish(const std::string& topic, std::span<const uint8_t> payload,
                                    uint8_t qos, uint16_t packet_id, bool dup = false);
std::vector<uint8_t> encode_puback(uint16_t packet_id);
std::vector<uint8_t> encode_subscribe(uint16_t packet_id,
                                      const std::vector<std::pair<std::string, uint8_t>>& filters);
std::vector<uint8_t> encode_suback(uint16_t packet_id, const std::vector<uint8_t>& return_codes);
std::vector<uint8_t> encode_unsubscribe(uint16_t packet_id,
                                        const std::vector<std::string>& filters);
std::vector<uint8_t> encode_unsuback(uint16_t packet_id);
std::vector<uint8_t> encode_pingreq();
std::vector<uint8_t> encode_pingresp();
std::vector<uint8_t> encode_disconnect();

// -- decoders ---------------------------------------------------------------

struct ConnectInfo {
    std::string client_id;
    uint16_t keepalive_s = 0;
    bool clean_session = true;
};

struct PublishInfo {
    std::string topic;
    std::vector<uint8_t> payload;
    uint8_t qos = 0;
    uint16_t packet_id = 0;  // only meaningful for qos > 0
    bool dup = false;
};

struct SubscribeInfo {
    uint16_t packet_id = 0;
    std::vector<std::pair<std::string, uint8_t>> filters;
};

struct SubackInfo {
    uint16_t packet_id = 0;
    std::vector<uint8_t> return_codes;
};

// All parsers throw PacketError on malformed input.
ConnectInfo parse_connect(const RawPacket& packet);
uint8_t parse_connack(const RawPacket& packet);  // returns the return code
PublishInfo parse_publish(const RawPacket& packet);
uint16_t parse_puback(const RawPacket& packet);
SubscribeInfo parse_subscribe(const RawPacket& packet);
SubackInfo parse_suback(const RawPacket& packet);
uint16_t parse_unsuback(const RawPacket& packet);

// Incremental frame assembly over a byte stream.
class FrameParser {
public:
    void feed(std::span<const uint8_t> bytes);
    // Returns the next complete packet, or nullopt when more bytes are
    // needed. Throws PacketError on an invalid fixed header.
    std::optional<RawPacket> next();

private:
    std::vector<uint8_t> buffer_;
};

}  // namespace edgebench::transport::mqtt
