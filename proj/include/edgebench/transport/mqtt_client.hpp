// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "edgebench/transport/mqtt_packet.hpp"
#include "edgebench/transport/pubsub.hpp"

namespace edgebench::transport {

// MQTT 3.1.1 client speaking to an external broker. Publishes and subscribes
// at QoS 1 (at-least-once). Incoming messages are dispatched on the reader
// thread, so handlers must not synchronously publish-and-wait from within a
// callback.
class MqttClient final : public PubSubEndpoint {
public:
    struct Options {
        std::string host = "127.0.0.1";
        uint16_t port = 1883;
        std::string client_id;
        uint16_t keepalive_s = 30;
        double connect_timeout_s = 5.0;
        double ack_timeout_s = 10.0;
        size_t max_payload_bytes = kDefaultMaxPayloadBytes;
    };

    explicit MqttClient(Options options);
    ~MqttClient() override;

    MqttClient(const MqttClient&) = delete;
    MqttClient& operator=(const MqttClient&) = delete;

    // Throws TransportError when the broker is unreachable or rejects the
    // connection.
    void connect();
    void disconnect();

    const std::string& client_id() const override { return options_.client_id; }
    bool connected() const override { return connected_.load(); }
    void publish(const std::string& topic, std::span<const uint8_t> payload) override;
    uint64_t subscribe(const std::string& filter, MessageHandler handler) override;
    void unsubscribe(uint64_t handle) override;

private:
    struct Subscription {
        uint64_t handle;
        std::string filter;
        MessageHandler handler;
    };

    void reader_loop();
    void keepalive_loop();
    void handle_packet(const mqtt::RawPacket& packet);
    void send_raw(std::span<const uint8_t> bytes);
    uint16_t next_packet_id();
    bool wait_for_ack(uint16_t packet_id);
    void teardown_socket();

    Options options_;
    int socket_fd_ = -1;
    std::atomic<bool> connected_{false};
    std::atomic<bool> stopping_{false};

    std::thread reader_thread_;
    std::thread keepalive_thread_;

    std::mutex write_mutex_;

    std::mutex ack_mutex_;
    std::condition_variable ack_cv_;
    std::map<uint16_t, bool> pending_acks_;  // id -> acked
    uint16_t packet_id_counter_ = 0;

    std::mutex subs_mutex_;
    std::vector<Subscription> subscriptions_;
    uint64_t next_handle_ = 1;
};

}  // namespace edgebench::transport
