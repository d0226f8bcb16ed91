// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/transport/mqtt_client.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>

#include "edgebench/common/log.hpp"
#include "edgebench/protocol/topics.hpp"

namespace edgebench::transport {

namespace {

int connect_tcp(const std::string& host, uint16_t port, double timeout_s) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* results = nullptr;
    const std::string port_str = std::to_string(port);
    if (getaddrinfo(host.c_str(), port_str.c_str(), &hints, &results) != 0) {
        throw TransportError("mqtt: cannot resolve " + host);
    }
    int fd = -1;
    std::string last_error = "no addresses";
    for (addrinfo* ai = results; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        if (errno == EINPROGRESS) {
            pollfd pfd{fd, POLLOUT, 0};
            const int rc = ::poll(&pfd, 1, static_cast<int>(timeout_s * 1000.0));
            int so_error = 0;
            socklen_t len = sizeof(so_error);
            if (rc > 0 && ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &so_error, &len) == 0 &&
                so_error == 0) {
                break;
            }
            last_error = rc == 0 ? "connect timeout" : std::strerror(so_error);
        } else {
            last_error = std::strerror(errno);
        }
        ::close(fd);
        fd = -1;
    }
    freeaddrinfo(results);
    if (fd < 0) {
        throw TransportError("mqtt: cannot connect to " + host + ":" + port_str + " (" +
                             last_error + ")");
    }
    // Back to blocking mode; the reader uses poll() for timeouts.
    const int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags & ~O_NONBLOCK);
    return fd;
}

}  // namespace

MqttClient::MqttClient(Options options) : options_(std::move(options)) {
    if (options_.client_id.empty()) {
        throw TransportError("mqtt: client_id must not be empty");
    }
}

MqttClient::~MqttClient() { disconnect(); }

void MqttClient::connect() {
    if (connected_.load()) return;
    stopping_.store(false);
    socket_fd_ = connect_tcp(options_.host, options_.port, options_.connect_timeout_s);

    const auto connect_pkt = mqtt::encode_connect(options_.client_id, options_.keepalive_s);
    if (::send(socket_fd_, connect_pkt.data(), connect_pkt.size(), MSG_NOSIGNAL) < 0) {
        teardown_socket();
        throw TransportError("mqtt: CONNECT send failed");
    }

    // Synchronous CONNACK wait before the reader thread takes over.
    mqtt::FrameParser parser;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(options_.connect_timeout_s);
    while (true) {
        std::optional<mqtt::RawPacket> packet;
        try {
            packet = parser.next();
        } catch (const mqtt::PacketError& err) {
            teardown_socket();
            throw TransportError(std::string("mqtt: bad CONNACK: ") + err.what());
        }
        if (packet) {
            uint8_t code = 0xff;
            try {
                code = mqtt::parse_connack(*packet);
            } catch (const mqtt::PacketError& err) {
                teardown_socket();
                throw TransportError(std::string("mqtt: bad CONNACK: ") + err.what());
            }
            if (code != 0) {
                teardown_socket();
                throw TransportError("mqtt: connection refused, code " + std::to_string(code));
            }
            break;
        }
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            teardown_socket();
            throw TransportError("mqtt: CONNACK timeout");
        }
        pollfd pfd{socket_fd_, POLLIN, 0};
        const int timeout_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
        if (::poll(&pfd, 1, std::max(timeout_ms, 1)) <= 0) continue;
        uint8_t chunk[1024];
        const ssize_t n = ::recv(socket_fd_, chunk, sizeof(chunk), 0);
        if (n <= 0) {
            teardown_socket();
            throw TransportError("mqtt: connection closed during CONNACK wait");
        }
        parser.feed({chunk, static_cast<size_t>(n)});
    }

    connected_.store(true);
    reader_thread_ = std::thread([this] { reader_loop(); });
    if (options_.keepalive_s > 0) {
        keepalive_thread_ = std::thread([this] { keepalive_loop(); });
    }
}

void MqttClient::disconnect() {
    if (stopping_.exchange(true)) {
        if (reader_thread_.joinable()) reader_thread_.join();
        if (keepalive_thread_.joinable()) keepalive_thread_.join();
        return;
    }
    if (connected_.load()) {
        try {
            const auto pkt = mqtt::encode_disconnect();
            std::lock_guard<std::mutex> lock(write_mutex_);
            ::send(socket_fd_, pkt.data(), pkt.size(), MSG_NOSIGNAL);
        } catch (...) {
        }
    }
    connected_.store(false);
    if (socket_fd_ >= 0) ::shutdown(socket_fd_, SHUT_RDWR);
    if (reader_thread_.joinable()) reader_thread_.join();
    if (keepalive_thread_.joinable()) keepalive_thread_.join();
    teardown_socket();
    ack_cv_.notify_all();
}

void MqttClient::teardown_socket() {
    if (socket_fd_ >= 0) {
        ::close(socket_fd_);
        socket_fd_ = -1;
    }
}

void MqttClient::send_raw(std::span<const uint8_t> bytes) {
    std::lock_guard<std::mutex> lock(write_mutex_);
    size_t sent = 0;
    while (sent < bytes.size()) {
        const ssize_t n =
            ::send(socket_fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) {
            connected_.store(false);
            throw TransportError("mqtt: send failed");
        }
        sent += static_cast<size_t>(n);
    }
}

uint16_t MqttClient::next_packet_id() {
    std::lock_guard<std::mutex> lock(ack_mutex_);
    do {
        ++packet_id_counter_;
    } while (packet_id_counter_ == 0 || pending_acks_.count(packet_id_counter_) != 0);
    pending_acks_[packet_id_counter_] = false;
    return packet_id_counter_;
}

bool MqttClient::wait_for_ack(uint16_t packet_id) {
    std::unique_lock<std::mutex> lock(ack_mutex_);
    const bool acked = ack_cv_.wait_for(
        lock, std::chrono::duration<double>(options_.ack_timeout_s), [&] {
            const auto it = pending_acks_.find(packet_id);
            return it == pending_acks_.end() || it->second || !connected_.load();
        });
    const auto it = pending_acks_.find(packet_id);
    const bool ok = acked && it != pending_acks_.end() && it->second;
    pending_acks_.erase(packet_id);
    return ok;
}

void MqttClient::publish(const std::string& topic, std::span<const uint8_t> payload) {
    if (!connected_.load()) throw TransportError("publish: not connected");
    if (payload.size() > options_.max_payload_bytes) {
        throw TransportError("publish: payload of " + std::to_string(payload.size()) +
                             " bytes exceeds limit");
    }
    const uint16_t packet_id = next_packet_id();
    send_raw(mqtt::encode_publish(topic, payload, 1, packet_id));
    if (!wait_for_ack(packet_id)) {
        throw TransportError("publish: no PUBACK for packet " + std::to_string(packet_id));
    }
}

uint64_t MqttClient::subscribe(const std::string& filter, MessageHandler handler) {
    if (!connected_.load()) throw TransportError("subscribe: not connected");
    if (!protocol::valid_filter(filter)) {
        throw TransportError("subscribe: invalid filter '" + filter + "'");
    }
    uint64_t handle = 0;
    {
        std::lock_guard<std::mutex> lock(subs_mutex_);
        handle = next_handle_++;
        subscriptions_.push_back(Subscription{handle, filter, std::move(handler)});
    }
    const uint16_t packet_id = next_packet_id();
    send_raw(mqtt::encode_subscribe(packet_id, {{filter, 1}}));
    if (!wait_for_ack(packet_id)) {
        std::lock_guard<std::mutex> lock(subs_mutex_);
        std::erase_if(subscriptions_, [&](const Subscription& s) { return s.handle == handle; });
        throw TransportError("subscribe: no SUBACK for '" + filter + "'");
    }
    return handle;
}

void MqttClient::unsubscribe(uint64_t handle) {
    std::string filter;
    {
        std::lock_guard<std::mutex> lock(subs_mutex_);
        for (const Subscription& sub : subscriptions_) {
            if (sub.handle == handle) {
                filter = sub.filter;
                break;
            }
        }
        std::erase_if(subscriptions_, [&](const Subscription& s) { return s.handle == handle; });
    }
    if (filter.empty() || !connected_.load()) return;
    // Only drop the broker-side subscription when no other local handler
    // uses the same filter.
    {
        std::lock_guard<std::mutex> lock(subs_mutex_);
        for (const Subscription& sub : subscriptions_) {
            if (sub.filter == filter) return;
        }
    }
    const uint16_t packet_id = next_packet_id();
    send_raw(mqtt::encode_unsubscribe(packet_id, {filter}));
    wait_for_ack(packet_id);
}

void MqttClient::handle_packet(const mqtt::RawPacket& packet) {
    switch (packet.type) {
        case mqtt::PacketType::publish: {
            const mqtt::PublishInfo info = mqtt::parse_publish(packet);
            if (info.qos > 0) send_raw(mqtt::encode_puback(info.packet_id));
            std::vector<MessageHandler> handlers;
            {
                std::lock_guard<std::mutex> lock(subs_mutex_);
                for (const Subscription& sub : subscriptions_) {
                    if (protocol::topic_matches(sub.filter, info.topic)) {
                        handlers.push_back(sub.handler);
                    }
                }
            }
            for (const MessageHandler& handler : handlers) {
                try {
                    handler(info.topic, info.payload);
                } catch (const std::exception& err) {
                    log::error("mqtt handler for ", info.topic, " threw: ", err.what());
                }
            }
            break;
        }
        case mqtt::PacketType::puback:
        case mqtt::PacketType::suback:
        case mqtt::PacketType::unsuback: {
            uint16_t packet_id = 0;
            if (packet.type == mqtt::PacketType::puback) {
                packet_id = mqtt::parse_puback(packet);
            } else if (packet.type == mqtt::PacketType::suback) {
                const mqtt::SubackInfo info = mqtt::parse_suback(packet);
                for (const uint8_t code : info.return_codes) {
                    if (code == 0x80) log::warn("mqtt: broker rejected a subscription");
                }
                packet_id = info.packet_id;
            } else {
                packet_id = mqtt::parse_unsuback(packet);
            }
            std::lock_guard<std::mutex> lock(ack_mutex_);
            const auto it = pending_acks_.find(packet_id);
            if (it != pending_acks_.end()) it->second = true;
            ack_cv_.notify_all();
            break;
        }
        case mqtt::PacketType::pingresp:
            break;
        default:
            log::debug("mqtt: ignoring packet type ",
                       static_cast<int>(static_cast<uint8_t>(packet.type)));
            break;
    }
}

void MqttClient::reader_loop() {
    mqtt::FrameParser parser;
    uint8_t chunk[16384];
    while (!stopping_.load()) {
        pollfd pfd{socket_fd_, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, 200);
        if (rc < 0) break;
        if (rc == 0) continue;
        const ssize_t n = ::recv(socket_fd_, chunk, sizeof(chunk), 0);
        if (n <= 0) break;
        parser.feed({chunk, static_cast<size_t>(n)});
        try {
            while (auto packet = parser.next()) handle_packet(*packet);
        } catch (const mqtt::PacketError& err) {
            log::error("mqtt: protocol error: ", err.what());
            break;
        } catch (const TransportError& err) {
            log::error("mqtt: ", err.what());
            break;
        }
    }
    connected_.store(false);
    ack_cv_.notify_all();
}

void MqttClient::keepalive_loop() {
    const auto interval =
        std::chrono::milliseconds(std::max(1, options_.keepalive_s * 1000 / 2));
    auto next_ping = std::chrono::steady_clock::now() + interval;
    while (!stopping_.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        if (!connected_.load()) continue;
        if (std::chrono::steady_clock::now() < next_ping) continue;
        try {
            send_raw(mqtt::encode_pingreq());
        } catch (const TransportError&) {
            // reader will notice the dead socket
        }
        next_ping = std::chrono::steady_clock::now() + interval;
    }
}

}  // namespace edgebench::transport
