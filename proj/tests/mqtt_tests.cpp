// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <mutex>
#include <thread>

#include "edgebench/transport/mqtt_client.hpp"
#include "edgebench/transport/mqtt_packet.hpp"
#include "support/mini_mqtt_broker.hpp"

using namespace edgebench;
using namespace edgebench::transport;

namespace {

// Feeds bytes one at a time to exercise incremental frame assembly.
std::vector<mqtt::RawPacket> reparse_bytewise(const std::vector<uint8_t>& bytes) {
    mqtt::FrameParser parser;
    std::vector<mqtt::RawPacket> packets;
    for (const uint8_t byte : bytes) {
        parser.feed({&byte, 1});
        while (auto packet = parser.next()) packets.push_back(*packet);
    }
    return packets;
}

template <typename Predicate>
bool poll_until(Predicate predicate, double timeout_s = 5.0) {
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
    while (std::chrono::steady_clock::now() < deadline) {
        if (predicate()) return true;
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    return predicate();
}

}  // namespace

TEST_CASE("mqtt packets: connect round trip") {
    const auto bytes = mqtt::encode_connect("client-7", 30);
    const auto packets = reparse_bytewise(bytes);
    REQUIRE(packets.size() == 1);
    const auto info = mqtt::parse_connect(packets[0]);
    CHECK(info.client_id == "client-7");
    CHECK(info.keepalive_s == 30);
    CHECK(info.clean_session);
}

TEST_CASE("mqtt packets: publish round trip with qos 0 and 1") {
    const std::vector<uint8_t> payload = {0, 1, 2, 255};
    for (const uint8_t qos : {0, 1}) {
        const auto bytes = mqtt::encode_publish("bench/s1/input", payload, qos, 77);
        const auto packets = reparse_bytewise(bytes);
        REQUIRE(packets.size() == 1);
        const auto info = mqtt::parse_publish(packets[0]);
        CHECK(info.topic == "bench/s1/input");
        CHECK(info.payload == payload);
        CHECK(info.qos == qos);
        if (qos == 1) CHECK(info.packet_id == 77);
    }
}

TEST_CASE("mqtt packets: remaining-length boundaries") {
    for (const size_t size : {size_t{0}, size_t{1}, size_t{127}, size_t{128}, size_t{16383},
                              size_t{16384}, size_t{70000}}) {
        const std::vector<uint8_t> payload(size, 0xab);
        const auto bytes = mqtt::encode_publish("t", payload, 0, 0);
        mqtt::FrameParser parser;
        parser.feed(bytes);
        const auto packet = parser.next();
        REQUIRE(packet.has_value());
        const auto info = mqtt::parse_publish(*packet);
        CHECK(info.payload.size() == size);
        CHECK(!parser.next().has_value());
    }
}

TEST_CASE("mqtt packets: subscribe/suback round trip") {
    const auto bytes = mqtt::encode_subscribe(5, {{"bench/+/config", 1}, {"a/b", 0}});
    const auto packets = reparse_bytewise(bytes);
    REQUIRE(packets.size() == 1);
    const auto info = mqtt::parse_subscribe(packets[0]);
    CHECK(info.packet_id == 5);
    REQUIRE(info.filters.size() == 2);
    CHECK(info.filters[0].first == "bench/+/config");
    CHECK(info.filters[0].second == 1);

    const auto suback = reparse_bytewise(mqtt::encode_suback(5, {1, 0}));
    REQUIRE(suback.size() == 1);
    const auto suback_info = mqtt::parse_suback(suback[0]);
    CHECK(suback_info.packet_id == 5);
    CHECK(suback_info.return_codes == std::vector<uint8_t>{1, 0});
}

TEST_CASE("mqtt packets: malformed input rejected") {
    mqtt::FrameParser parser;
    const std::vector<uint8_t> zero_type = {0x00, 0x00};
    parser.feed(zero_type);
    CHECK_THROWS_AS((void)parser.next(), mqtt::PacketError);

    mqtt::RawPacket short_connack;
    short_connack.type = mqtt::PacketType::connack;
    short_connack.body = {0x00};
    CHECK_THROWS_AS((void)mqtt::parse_connack(short_connack), mqtt::PacketError);
}

TEST_CASE("mqtt packets: interleaved stream splits into frames") {
    std::vector<uint8_t> stream;
    const auto append = [&stream](const std::vector<uint8_t>& bytes) {
        stream.insert(stream.end(), bytes.begin(), bytes.end());
    };
    append(mqtt::encode_pingreq());
    append(mqtt::encode_publish("t", std::vector<uint8_t>{1, 2}, 1, 9));
    append(mqtt::encode_puback(9));
    append(mqtt::encode_disconnect());
    const auto packets = reparse_bytewise(stream);
    REQUIRE(packets.size() == 4);
    CHECK(packets[0].type == mqtt::PacketType::pingreq);
    CHECK(packets[1].type == mqtt::PacketType::publish);
    CHECK(packets[2].type == mqtt::PacketType::puback);
    CHECK(packets[3].type == mqtt::PacketType::disconnect);
}

TEST_CASE("mqtt client: connect, subscribe, publish against a live broker") {
    testsupport::MiniMqttBroker broker;

    MqttClient::Options options;
    options.port = broker.port();
    options.client_id = "sub";
    options.keepalive_s = 1;  // exercise the ping path
    MqttClient subscriber(options);
    subscriber.connect();
    CHECK(subscriber.connected());

    std::mutex mutex;
    std::vector<std::pair<std::string, std::vector<uint8_t>>> received;
    subscriber.subscribe("bench/+/input", [&](const std::string& topic,
                                              const std::vector<uint8_t>& payload) {
        std::lock_guard<std::mutex> lock(mutex);
        received.emplace_back(topic, payload);
    });

    MqttClient::Options pub_options;
    pub_options.port = broker.port();
    pub_options.client_id = "pub";
    MqttClient publisher(pub_options);
    publisher.connect();

    const std::vector<uint8_t> payload = {9, 8, 7};
    publisher.publish("bench/s1/input", payload);

    REQUIRE(poll_until([&] {
        std::lock_guard<std::mutex> lock(mutex);
        return received.size() == 1;
    }));
    {
        std::lock_guard<std::mutex> lock(mutex);
        CHECK(received[0].first == "bench/s1/input");
        CHECK(received[0].second == payload);
    }

    // Keepalive ping survives an idle second.
    std::this_thread::sleep_for(std::chrono::milliseconds(1200));
    CHECK(subscriber.connected());
    publisher.publish("bench/s1/input", payload);
    REQUIRE(poll_until([&] {
        std::lock_guard<std::mutex> lock(mutex);
        return received.size() == 2;
    }));

    publisher.disconnect();
    subscriber.disconnect();
}

TEST_CASE("mqtt client: unsubscribe stops delivery") {
    testsupport::MiniMqttBroker broker;
    MqttClient::Options options;
    options.port = broker.port();
    options.client_id = "c1";
    MqttClient client(options);
    client.connect();

    std::mutex mutex;
    int hits = 0;
    const uint64_t handle =
        client.subscribe("x", [&](const std::string&, const std::vector<uint8_t>&) {
            std::lock_guard<std::mutex> lock(mutex);
            ++hits;
        });
    client.publish("x", std::vector<uint8_t>{1});
    REQUIRE(poll_until([&] {
        std::lock_guard<std::mutex> lock(mutex);
        return hits == 1;
    }));
    client.unsubscribe(handle);
    client.publish("x", std::vector<uint8_t>{2});
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    {
        std::lock_guard<std::mutex> lock(mutex);
        CHECK(hits == 1);
    }
    client.disconnect();
}

TEST_CASE("mqtt client: unreachable broker raises TransportError") {
    MqttClient::Options options;
    options.host = "127.0.0.1";
    options.port = 1;  // nothing listens here
    options.client_id = "c1";
    options.connect_timeout_s = 0.5;
    MqttClient client(options);
    CHECK_THROWS_AS(client.connect(), TransportError);
    CHECK(!client.connected());
}

TEST_CASE("mqtt client: oversized payload rejected locally") {
    testsupport::MiniMqttBroker broker;
    MqttClient::Options options;
    options.port = broker.port();
    options.client_id = "c1";
    options.max_payload_bytes = 64;
    MqttClient client(options);
    client.connect();
    CHECK_THROWS_AS(client.publish("t", std::vector<uint8_t>(65, 0)), TransportError);
    client.disconnect();
}
