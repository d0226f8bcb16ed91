// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/agent/detector_plugin.hpp"

#include <stdexcept>

namespace edgebench::agent {

void DetectorRegistry::register_plugin(const std::string& name, DetectorFactory factory) {
    if (name.empty()) throw std::invalid_argument("register_plugin: empty name");
    if (!factory) throw std::invalid_argument("register_plugin: null factory");
    const auto [it, inserted] = factories_.emplace(name, std::move(factory));
    if (!inserted) {
        throw std::invalid_argument("register_plugin: duplicate name '" + name + "'");
    }
}

bool DetectorRegistry::contains(const std::string& name) const {
    return factories_.count(name) != 0;
}

std::unique_ptr<DetectorPlugin> DetectorRegistry::create(
    const std::string& name, const protocol::SessionConfig& config) const {
    const auto it = factories_.find(name);
    if (it == factories_.end()) {
        throw std::invalid_argument("unknown detector '" + name + "'");
    }
    return it->second(config);
}

std::vector<std::string> DetectorRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(factories_.size());
    for (const auto& [name, factory] : factories_) out.push_back(name);
    return out;
}

}  // namespace edgebench::agent
