// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/common/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace edgebench::log {

namespace {

Level level_from_env() {
    const char* env = std::getenv("BENCH_LOG_LEVEL");
    if (env == nullptr) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "warn") == 0) return Level::warn;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::warn;
}

std::atomic<Level>& threshold_slot() {
    static std::atomic<Level> slot{level_from_env()};
    return slot;
}

const char* tag(Level level) {
    switch (level) {
        case Level::error: return "ERROR";
        case Level::warn: return "WARN";
        case Level::info: return "INFO";
        case Level::debug: return "DEBUG";
    }
    return "?";
}

}  // namespace

Level threshold() { return threshold_slot().load(std::memory_order_relaxed); }

void set_threshold(Level level) { threshold_slot().store(level, std::memory_order_relaxed); }

bool enabled(Level level) { return static_cast<int>(level) <= static_cast<int>(threshold()); }

void write(Level level, const std::string& message) {
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    std::fprintf(stderr, "[%s] %s\n", tag(level), message.c_str());
}

}  // namespace edgebench::log
