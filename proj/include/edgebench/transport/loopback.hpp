// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "edgebench/transport/pubsub.hpp"

namespace edgebench::transport {

// In-process broker for tests and desk-scale runs. Per-topic publisher order
// is preserved for every subscriber, including under injected duplicates and
// delays. Fault decisions are drawn from a per-publisher RNG stream derived
// from the broker seed and the publisher's client id, so each publisher's
// fault pattern is reproducible regardless of thread interleaving.

class LoopbackEndpoint;

class LoopbackBroker {
public:
    struct FaultProfile {
        double duplicate_probability = 0.0;
        double delay_min_ms = 0.0;
        double delay_max_ms = 0.0;
        uint64_t seed = 0;
    };

    // Called under the broker lock for every accepted publish, in global
    // publish order. Test instrumentation hook.
    using PublishObserver = std::function<void(const std::string& client_id,
                                               const std::string& topic,
                                               const std::vector<uint8_t>& payload)>;

    LoopbackBroker();  // zero-fault profile
    explicit LoopbackBroker(FaultProfile profile,
                            size_t max_payload_bytes = kDefaultMaxPayloadBytes);
    ~LoopbackBroker();

    LoopbackBroker(const LoopbackBroker&) = delete;
    LoopbackBroker& operator=(const LoopbackBroker&) = delete;

    std::shared_ptr<LoopbackEndpoint> connect(const std::string& client_id);
    void set_publish_observer(PublishObserver observer);

private:
    friend class LoopbackEndpoint;

    void publish_from(LoopbackEndpoint& publisher, const std::string& topic,
                      std::span<const uint8_t> payload);
    void drop_endpoint(LoopbackEndpoint* endpoint);

    FaultProfile profile_;
    size_t max_payload_bytes_;
    std::mutex mutex_;
    std::vector<LoopbackEndpoint*> endpoints_;  // creation order
    PublishObserver observer_;
};

class LoopbackEndpoint final : public PubSubEndpoint,
                               public std::enable_shared_from_this<LoopbackEndpoint> {
public:
    ~LoopbackEndpoint() override;

    const std::string& client_id() const override { return client_id_; }
    bool connected() const override;
    void publish(const std::string& topic, std::span<const uint8_t> payload) override;
    uint64_t subscribe(const std::string& filter, MessageHandler handler) override;
    void unsubscribe(uint64_t handle) override;

    // Stops the delivery thread after draining queued messages.
    void close();

private:
    friend class LoopbackBroker;

    struct Subscription {
        uint64_t handle;
        std::string filter;
        MessageHandler handler;
    };

    struct QueuedMessage {
        std::string topic;
        std::vector<uint8_t> payload;
        std::chrono::steady_clock::time_point due;
    };

    LoopbackEndpoint(LoopbackBroker* broker, std::string client_id, uint64_t rng_seed);
    void start();
    void enqueue(const std::string& topic, std::span<const uint8_t> payload,
                 std::chrono::steady_clock::time_point due);
    void delivery_loop();
    bool matches_any_filter(const std::string& topic);

    std::atomic<LoopbackBroker*> broker_;  // null after broker destruction
    std::string client_id_;
    uint64_t rng_state_;  // per-publisher fault stream, guarded by broker lock

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<QueuedMessage> queue_;
    bool stopping_ = false;
    std::thread delivery_thread_;

    std::mutex subs_mutex_;
    std::vector<Subscription> subscriptions_;
    uint64_t next_handle_ = 1;
};

}  // namespace edgebench::transport
