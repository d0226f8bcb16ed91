// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgebench::transport {

// Endpoints never address each other; all interaction flows through
// publish/subscribe on topics. Delivery is at-least-once: consumers must
// tolerate duplicates. Handlers of one endpoint are serialized (no two run
// concurrently) and may run on a delivery thread distinct from the
// publisher; publish is callable from any thread.

inline constexpr size_t kDefaultMaxPayloadBytes = 32ull * 1024 * 1024;

struct DeliveryPolicy {
    bool at_least_once = true;
    // Host-side flow-control window: frames unacknowledged-by-result per
    // target.
    uint32_t max_in_flight = 4;
};

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using MessageHandler =
    std::function<void(const std::string& topic, const std::vector<uint8_t>& payload)>;

class PubSubEndpoint {
public:
    virtual ~PubSubEndpoint() = default;

    virtual const std::string& client_id() const = 0;
    virtual bool connected() const = 0;

    // Throws TransportError when disconnected or the payload exceeds the
    // size limit.
    virtual void publish(const std::string& topic, std::span<const uint8_t> payload) = 0;

    // Returns a subscription handle. The filter may use the single-level
    // '+' wildcard.
    virtual uint64_t subscribe(const std::string& filter, MessageHandler handler) = 0;
    virtual void unsubscribe(uint64_t handle) = 0;
};

}  // namespace edgebench::transport
