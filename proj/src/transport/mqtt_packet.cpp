// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/transport/mqtt_packet.hpp"

#include <stdexcept>

namespace edgebench::transport::mqtt {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t value) {
    out.push_back(static_cast<uint8_t>(value >> 8));
    out.push_back(static_cast<uint8_t>(value));
}

void put_string(std::vector<uint8_t>& out, const std::string& text) {
    if (text.size() > 0xffff) throw PacketError("mqtt string too long");
    put_u16(out, static_cast<uint16_t>(text.size()));
    out.insert(out.end(), text.begin(), text.end());
}

std::vector<uint8_t> frame(PacketType type, uint8_t flags, std::span<const uint8_t> body) {
    std::vector<uint8_t> out;
    out.reserve(body.size() + 5);
    out.push_back(static_cast<uint8_t>((static_cast<uint8_t>(type) << 4) | (flags & 0x0f)));
    size_t remaining = body.size();
    if (remaining > 268435455) throw PacketError("mqtt packet too large");
    do {
        uint8_t digit = remaining % 128;
        remaining /= 128;
        if (remaining > 0) digit |= 0x80;
        out.push_back(digit);
    } while (remaining > 0);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

class BodyReader {
public:
    explicit BodyReader(const std::vector<uint8_t>& body) : body_(body) {}

    uint8_t u8() {
        need(1);
        return body_[pos_++];
    }
    uint16_t u16() {
        need(2);
        const uint16_t value = static_cast<uint16_t>((body_[pos_] << 8) | body_[pos_ + 1]);
        pos_ += 2;
        return value;
    }
    std::string string() {
        const uint16_t n = u16();
        need(n);
        std::string text(reinterpret_cast<const char*>(body_.data() + pos_), n);
        pos_ += n;
        return text;
    }
    std::vector<uint8_t> rest() {
        std::vector<uint8_t> out(body_.begin() + static_cast<ptrdiff_t>(pos_), body_.end());
        pos_ = body_.size();
        return out;
    }
    bool at_end() const { return pos_ == body_.size(); }

private:
    void need(size_t n) {
        if (body_.size() - pos_ < n) throw PacketError("mqtt packet body too short");
    }
    const std::vector<uint8_t>& body_;
    size_t pos_ = 0;
};

void expect_type(const RawPacket& packet, PacketType type, const char* what) {
    if (packet.type != type) throw PacketError(std::string("expected ") + what + " packet");
}

}  // namespace

std::vector<uint8_t> encode_connect(const std::string& client_id, uint16_t keepalive_s,
                                    bool clean_session) {
    std::vector<uint8_t> body;
    put_string(body, "MQTT");
    body.push_back(0x04);  // protocol level 3.1.1
    body.push_back(clean_session ? 0x02 : 0x00);
    put_u16(body, keepalive_s);
    put_string(body, client_id);
    return frame(PacketType::connect, 0, body);
}

std::vector<uint8_t> encode_connack(uint8_t return_code, bool session_present) {
    const uint8_t body[2] = {static_cast<uint8_t>(session_present ? 1 : 0), return_code};
    return frame(PacketType::connack, 0, body);
}

std::vector<uint8_t> encode_publish(const std::string& topic, std::span<const uint8_t> payload,
                                    uint8_t qos, uint16_t packet_id, bool dup) {
    if (qos > 1) throw PacketError("qos 2 not supported");
    std::vector<uint8_t> body;
    body.reserve(topic.size() + payload.size() + 4);
    put_string(body, topic);
    if (qos > 0) put_u16(body, packet_id);
    body.insert(body.end(), payload.begin(), payload.end());
    const uint8_t flags = static_cast<uint8_t>((dup ? 0x08 : 0x00) | (qos << 1));
    return frame(PacketType::publish, flags, body);
}

std::vector<uint8_t> encode_puback(uint16_t packet_id) {
    std::vector<uint8_t> body;
    put_u16(body, packet_id);
    return frame(PacketType::puback, 0, body);
}

std::vector<uint8_t> encode_subscribe(uint16_t packet_id,
                                      const std::vector<std::pair<std::string, uint8_t>>& filters) {
    std::vector<uint8_t> body;
    put_u16(body, packet_id);
    for (const auto& [filter, qos] : filters) {
        put_string(body, filter);
        body.push_back(qos);
    }
    return frame(PacketType::subscribe, 0x02, body);
}

std::vector<uint8_t> encode_suback(uint16_t packet_id, const std::vector<uint8_t>& return_codes) {
    std::vector<uint8_t> body;
    put_u16(body, packet_id);
    body.insert(body.end(), return_codes.begin(), return_codes.end());
    return frame(PacketType::suback, 0, body);
}

std::vector<uint8_t> encode_unsubscribe(uint16_t packet_id,
                                        const std::vector<std::string>& filters) {
    std::vector<uint8_t> body;
    put_u16(body, packet_id);
    for (const std::string& filter : filters) put_string(body, filter);
    return frame(PacketType::unsubscribe, 0x02, body);
}

std::vector<uint8_t> encode_unsuback(uint16_t packet_id) {
    std::vector<uint8_t> body;
    put_u16(body, packet_id);
    return frame(PacketType::unsuback, 0, body);
}

std::vector<uint8_t> encode_pingreq() { return frame(PacketType::pingreq, 0, {}); }
std::vector<uint8_t> encode_pingresp() { return frame(PacketType::pingresp, 0, {}); }
std::vector<uint8_t> encode_disconnect() { return frame(PacketType::disconnect, 0, {}); }

ConnectInfo parse_connect(const RawPacket& packet) {
    expect_type(packet, PacketType::connect, "CONNECT");
    BodyReader reader(packet.body);
    const std::string protocol = reader.string();
    if (protocol != "MQTT") throw PacketError("unsupported protocol name '" + protocol + "'");
    const uint8_t level = reader.u8();
    if (level != 0x04) throw PacketError("unsupported protocol level");
    const uint8_t flags = reader.u8();
    ConnectInfo info;
    info.clean_session = (flags & 0x02) != 0;
    info.keepalive_s = reader.u16();
    info.client_id = reader.string();
    return info;
}

uint8_t parse_connack(const RawPacket& packet) {
    expect_type(packet, PacketType::connack, "CONNACK");
    BodyReader reader(packet.body);
    reader.u8();  // session present
    return reader.u8();
}

PublishInfo parse_publish(const RawPacket& packet) {
    expect_type(packet, PacketType::publish, "PUBLISH");
    PublishInfo info;
    info.dup = (packet.flags & 0x08) != 0;
    info.qos = (packet.flags >> 1) & 0x03;
    if (info.qos > 1) throw PacketError("qos 2 not supported");
    BodyReader reader(packet.body);
    info.topic = reader.string();
    if (info.qos > 0) info.packet_id = reader.u16();
    info.payload = reader.rest();
    return info;
}

uint16_t parse_puback(const RawPacket& packet) {
    expect_type(packet, PacketType::puback, "PUBACK");
    BodyReader reader(packet.body);
    return reader.u16();
}

SubscribeInfo parse_subscribe(const RawPacket& packet) {
    expect_type(packet, PacketType::subscribe, "SUBSCRIBE");
    BodyReader reader(packet.body);
    SubscribeInfo info;
    info.packet_id = reader.u16();
    while (!reader.at_end()) {
        std::string filter = reader.string();
        const uint8_t qos = reader.u8();
        info.filters.emplace_back(std::move(filter), qos);
    }
    if (info.filters.empty()) throw PacketError("SUBSCRIBE without filters");
    return info;
}

SubackInfo parse_suback(const RawPacket& packet) {
    expect_type(packet, PacketType::suback, "SUBACK");
    BodyReader reader(packet.body);
    SubackInfo info;
    info.packet_id = reader.u16();
    info.return_codes = reader.rest();
    return info;
}

uint16_t parse_unsuback(const RawPacket& packet) {
    expect_type(packet, PacketType::unsuback, "UNSUBACK");
    BodyReader reader(packet.body);
    return reader.u16();
}

void FrameParser::feed(std::span<const uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<RawPacket> FrameParser::next() {
    if (buffer_.size() < 2) return std::nullopt;

    const uint8_t first = buffer_[0];
    const uint8_t type_bits = first >> 4;
    if (type_bits < 1 || type_bits > 14) throw PacketError("invalid packet type");

    size_t remaining = 0;
    size_t multiplier = 1;
    size_t header_len = 1;
    while (true) {
        if (header_len >= buffer_.size()) return std::nullopt;
        if (header_len > 4) throw PacketError("remaining length too long");
        const uint8_t digit = buffer_[header_len];
        remaining += static_cast<size_t>(digit & 0x7f) * multiplier;
        multiplier *= 128;
        ++header_len;
        if ((digit & 0x80) == 0) break;
    }
    if (buffer_.size() < header_len + remaining) return std::nullopt;

    RawPacket packet;
    packet.type = static_cast<PacketType>(type_bits);
    packet.flags = first & 0x0f;
    packet.body.assign(buffer_.begin() + static_cast<ptrdiff_t>(header_len),
                       buffer_.begin() + static_cast<ptrdiff_t>(header_len + remaining));
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<ptrdiff_t>(header_len + remaining));
    return packet;
}

}  // namespace edgebench::transport::mqtt
