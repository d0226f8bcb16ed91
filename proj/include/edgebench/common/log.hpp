// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sstream>
#include <string>

namespace edgebench::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from BENCH_LOG_LEVEL (error|warn|info|debug), default warn.
Level threshold();
void set_threshold(Level level);
bool enabled(Level level);
void write(Level level, const std::string& message);

namespace detail {
template <typename... Args>
std::string concat(Args&&... args) {
    std::ostringstream os;
    (os << ... << std::forward<Args>(args));
    return os.str();
}
}  // namespace detail

template <typename... Args>
void error(Args&&... args) {
    if (enabled(Level::error)) write(Level::error, detail::concat(std::forward<Args>(args)...));
}
template <typename... Args>
void warn(Args&&... args) {
    if (enabled(Level::warn)) write(Level::warn, detail::concat(std::forward<Args>(args)...));
}
template <typename... Args>
void info(Args&&... args) {
    if (enabled(Level::info)) write(Level::info, detail::concat(std::forward<Args>(args)...));
}
template <typename... Args>
void debug(Args&&... args) {
    if (enabled(Level::debug)) write(Level::debug, detail::concat(std::forward<Args>(args)...));
}

}  // namespace edgebench::log
