// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/mini_mqtt_broker.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

#include "edgebench/protocol/topics.hpp"
#include "edgebench/transport/mqtt_packet.hpp"

namespace edgebench::testsupport {

namespace mqtt = transport::mqtt;

struct MiniMqttBroker::Client {
    int fd = -1;
    std::mutex write_mutex;
    std::vector<std::string> filters;
    uint16_t next_packet_id = 1;
    bool closed = false;

    void send(const std::vector<uint8_t>& bytes) {
        std::lock_guard<std::mutex> lock(write_mutex);
        if (closed) return;
        size_t sent = 0;
        while (sent < bytes.size()) {
            const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
            if (n <= 0) {
                closed = true;
                return;
            }
            sent += static_cast<size_t>(n);
        }
    }
};

MiniMqttBroker::MiniMqttBroker() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("mini broker: socket failed");
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        throw std::runtime_error("mini broker: bind failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    if (::listen(listen_fd_, 16) != 0) throw std::runtime_error("mini broker: listen failed");
    accept_thread_ = std::thread([this] { accept_loop(); });
}

MiniMqttBroker::~MiniMqttBroker() { stop(); }

void MiniMqttBroker::stop() {
    {
        std::lock_guard<std::mutex> lock(clients_mutex_);
        if (stopping_) return;
        stopping_ = true;
    }
    if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
    if (accept_thread_.joinable()) accept_thread_.join();
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    {
        std::lock_guard<std::mutex> lock(clients_mutex_);
        for (auto& client : clients_) {
            if (client->fd >= 0) ::shutdown(client->fd, SHUT_RDWR);
        }
    }
    for (auto& thread : client_threads_) {
        if (thread.joinable()) thread.join();
    }
    std::lock_guard<std::mutex> lock(clients_mutex_);
    for (auto& client : clients_) {
        if (client->fd >= 0) ::close(client->fd);
        client->fd = -1;
    }
    clients_.clear();
}

void MiniMqttBroker::accept_loop() {
    while (true) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) return;  // listener shut down
        auto client = std::make_shared<Client>();
        client->fd = fd;
        std::lock_guard<std::mutex> lock(clients_mutex_);
        if (stopping_) {
            ::close(fd);
            return;
        }
        clients_.push_back(client);
        client_threads_.emplace_back([this, client] { client_loop(client); });
    }
}

void MiniMqttBroker::route_publish(const std::string& topic, const std::vector<uint8_t>& payload) {
    std::vector<std::shared_ptr<Client>> receivers;
    {
        std::lock_guard<std::mutex> lock(clients_mutex_);
        for (const auto& client : clients_) {
            for (const std::string& filter : client->filters) {
                if (protocol::topic_matches(filter, topic)) {
                    receivers.push_back(client);
                    break;
                }
            }
        }
    }
    for (const auto& receiver : receivers) {
        uint16_t packet_id = 0;
        {
            std::lock_guard<std::mutex> lock(clients_mutex_);
            packet_id = receiver->next_packet_id++;
            if (receiver->next_packet_id == 0) receiver->next_packet_id = 1;
        }
        receiver->send(mqtt::encode_publish(topic, payload, 1, packet_id));
    }
}

void MiniMqttBroker::client_loop(std::shared_ptr<Client> client) {
    mqtt::FrameParser parser;
    uint8_t chunk[16384];
    bool connected = false;
    while (true) {
        const ssize_t n = ::recv(client->fd, chunk, sizeof(chunk), 0);
        if (n <= 0) break;
        parser.feed({chunk, static_cast<size_t>(n)});
        try {
            while (auto packet = parser.next()) {
                switch (packet->type) {
                    case mqtt::PacketType::connect: {
                        mqtt::parse_connect(*packet);
                        client->send(mqtt::encode_connack(0));
                        connected = true;
                        break;
                    }
                    case mqtt::PacketType::subscribe: {
                        const auto info = mqtt::parse_subscribe(*packet);
                        std::vector<uint8_t> codes;
                        {
                            std::lock_guard<std::mutex> lock(clients_mutex_);
                            for (const auto& [filter, qos] : info.filters) {
                                client->filters.push_back(filter);
                                codes.push_back(qos > 1 ? 1 : qos);
                            }
                        }
                        client->send(mqtt::encode_suback(info.packet_id, codes));
                        break;
                    }
                    case mqtt::PacketType::unsubscribe: {
                        // Body: packet id then filters; reuse subscribe shape.
                        mqtt::RawPacket fake = *packet;
                        uint16_t packet_id = 0;
                        if (fake.body.size() >= 2) {
                            packet_id =
                                static_cast<uint16_t>((fake.body[0] << 8) | fake.body[1]);
                        }
                        client->send(mqtt::encode_unsuback(packet_id));
                        break;
                    }
                    case mqtt::PacketType::publish: {
                        const auto info = mqtt::parse_publish(*packet);
                        if (info.qos > 0) client->send(mqtt::encode_puback(info.packet_id));
                        route_publish(info.topic, info.payload);
                        break;
                    }
                    case mqtt::PacketType::puback:
                        break;  // receiver acks for forwarded qos1, ignored
                    case mqtt::PacketType::pingreq:
                        client->send(mqtt::encode_pingresp());
                        break;
                    case mqtt::PacketType::disconnect:
                        return;
                    default:
                        break;
                }
            }
        } catch (const mqtt::PacketError&) {
            break;
        }
    }
    (void)connected;
}

}  // namespace edgebench::testsupport
