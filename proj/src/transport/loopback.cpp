// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/transport/loopback.hpp"

#include <algorithm>

#include "edgebench/common/hash.hpp"
#include "edgebench/common/log.hpp"
#include "edgebench/protocol/topics.hpp"

namespace edgebench::transport {

namespace {

double next_unit_double(uint64_t& state) {
    state = mix64(state + 0x9e3779b97f4a7c15ULL);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------------------
// LoopbackBroker
// ---------------------------------------------------------------------------

LoopbackBroker::LoopbackBroker() : LoopbackBroker(FaultProfile{}) {}

LoopbackBroker::LoopbackBroker(FaultProfile profile, size_t max_payload_bytes)
    : profile_(profile), max_payload_bytes_(max_payload_bytes) {
    if (profile_.duplicate_probability < 0.0 || profile_.duplicate_probability > 1.0) {
        throw std::invalid_argument("LoopbackBroker: duplicate_probability outside [0,1]");
    }
    if (profile_.delay_min_ms < 0.0 || profile_.delay_max_ms < profile_.delay_min_ms) {
        throw std::invalid_argument("LoopbackBroker: bad delay range");
    }
}

LoopbackBroker::~LoopbackBroker() {
    std::vector<LoopbackEndpoint*> endpoints;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        endpoints = endpoints_;
        endpoints_.clear();
    }
    for (LoopbackEndpoint* endpoint : endpoints) {
        endpoint->broker_.store(nullptr);
        endpoint->close();
    }
}

std::shared_ptr<LoopbackEndpoint> LoopbackBroker::connect(const std::string& client_id) {
    const uint64_t rng_seed = mix_seed(profile_.seed, fnv1a(client_id));
    std::shared_ptr<LoopbackEndpoint> endpoint(
        new LoopbackEndpoint(this, client_id, rng_seed));
    endpoint->start();
    std::lock_guard<std::mutex> lock(mutex_);
    endpoints_.push_back(endpoint.get());
    return endpoint;
}

void LoopbackBroker::set_publish_observer(PublishObserver observer) {
    std::lock_guard<std::mutex> lock(mutex_);
    observer_ = std::move(observer);
}

void LoopbackBroker::drop_endpoint(LoopbackEndpoint* endpoint) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::erase(endpoints_, endpoint);
}

void LoopbackBroker::publish_from(LoopbackEndpoint& publisher, const std::string& topic,
                                  std::span<const uint8_t> payload) {
    if (payload.size() > max_payload_bytes_) {
        throw TransportError("publish: payload of " + std::to_string(payload.size()) +
                             " bytes exceeds limit");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    if (observer_) observer_(publisher.client_id_, topic, {payload.begin(), payload.end()});

    const auto now = std::chrono::steady_clock::now();
    for (LoopbackEndpoint* subscriber : endpoints_) {
        if (!subscriber->matches_any_filter(topic)) continue;
        // Fault draws come from the publisher's stream, one pair of draws
        // per matching subscriber, so the pattern is reproducible for a
        // fixed topology.
        const double delay_draw = next_unit_double(publisher.rng_state_);
        const double dup_draw = next_unit_double(publisher.rng_state_);
        const double delay_ms =
            profile_.delay_min_ms + delay_draw * (profile_.delay_max_ms - profile_.delay_min_ms);
        const auto due =
            now + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double, std::milli>(delay_ms));
        subscriber->enqueue(topic, payload, due);
        if (dup_draw < profile_.duplicate_probability) {
            subscriber->enqueue(topic, payload, due);
        }
    }
}

// ---------------------------------------------------------------------------
// LoopbackEndpoint
// ---------------------------------------------------------------------------

LoopbackEndpoint::LoopbackEndpoint(LoopbackBroker* broker, std::string client_id,
                                   uint64_t rng_seed)
    : broker_(broker), client_id_(std::move(client_id)), rng_state_(rng_seed) {}

LoopbackEndpoint::~LoopbackEndpoint() {
    LoopbackBroker* broker = broker_.load();
    if (broker != nullptr) broker->drop_endpoint(this);
    close();
}

void LoopbackEndpoint::start() {
    delivery_thread_ = std::thread([this] { delivery_loop(); });
}

bool LoopbackEndpoint::connected() const {
    return broker_.load() != nullptr;
}

void LoopbackEndpoint::publish(const std::string& topic, std::span<const uint8_t> payload) {
    LoopbackBroker* broker = broker_.load();
    if (broker == nullptr) throw TransportError("publish: endpoint disconnected");
    broker->publish_from(*this, topic, payload);
}

uint64_t LoopbackEndpoint::subscribe(const std::string& filter, MessageHandler handler) {
    if (!protocol::valid_filter(filter)) {
        throw TransportError("subscribe: invalid filter '" + filter + "'");
    }
    std::lock_guard<std::mutex> lock(subs_mutex_);
    const uint64_t handle = next_handle_++;
    subscriptions_.push_back(Subscription{handle, filter, std::move(handler)});
    return handle;
}

void LoopbackEndpoint::unsubscribe(uint64_t handle) {
    std::lock_guard<std::mutex> lock(subs_mutex_);
    std::erase_if(subscriptions_, [&](const Subscription& sub) { return sub.handle == handle; });
}

bool LoopbackEndpoint::matches_any_filter(const std::string& topic) {
    std::lock_guard<std::mutex> lock(subs_mutex_);
    return std::any_of(subscriptions_.begin(), subscriptions_.end(), [&](const Subscription& sub) {
        return protocol::topic_matches(sub.filter, topic);
    });
}

void LoopbackEndpoint::enqueue(const std::string& topic, std::span<const uint8_t> payload,
                               std::chrono::steady_clock::time_point due) {
    std::lock_guard<std::mutex> lock(queue_mutex_);
    if (stopping_) return;
    queue_.push_back(QueuedMessage{topic, {payload.begin(), payload.end()}, due});
    queue_cv_.notify_all();
}

void LoopbackEndpoint::close() {
    {
        std::lock_guard<std::mutex> lock(queue_mutex_);
        stopping_ = true;
        queue_cv_.notify_all();
    }
    if (delivery_thread_.joinable()) delivery_thread_.join();
}

void LoopbackEndpoint::delivery_loop() {
    while (true) {
        QueuedMessage message;
        {
            std::unique_lock<std::mutex> lock(queue_mutex_);
            queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
            if (queue_.empty()) return;  // stopping with a drained queue
            // FIFO even under injected delays: wait for the head's due time.
            // A closing endpoint drains immediately.
            const auto due = queue_.front().due;
            if (!stopping_ && std::chrono::steady_clock::now() < due) {
                queue_cv_.wait_until(lock, due, [&] { return stopping_; });
                if (!stopping_ && std::chrono::steady_clock::now() < due) continue;
            }
            message = std::move(queue_.front());
            queue_.pop_front();
        }
        std::vector<MessageHandler> handlers;
        {
            std::lock_guard<std::mutex> lock(subs_mutex_);
            for (const Subscription& sub : subscriptions_) {
                if (protocol::topic_matches(sub.filter, message.topic)) {
                    handlers.push_back(sub.handler);
                }
            }
        }
        for (const MessageHandler& handler : handlers) {
            try {
                handler(message.topic, message.payload);
            } catch (const std::exception& err) {
                log::error("loopback handler for ", message.topic, " threw: ", err.what());
            }
        }
    }
}

}  // namespace edgebench::transport
