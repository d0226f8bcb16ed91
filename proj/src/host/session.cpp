// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/host/session.hpp"

#include <algorithm>
#include <stdexcept>

namespace edgebench::host {

const char* to_string(SessionState state) {
    switch (state) {
        case SessionState::idle: return "idle";
        case SessionState::configuring: return "configuring";
        case SessionState::streaming: return "streaming";
        case SessionState::draining: return "draining";
        case SessionState::evaluating: return "evaluating";
        case SessionState::done: return "done";
        case SessionState::failed: return "failed";
    }
    return "?";
}

bool legal_transition(SessionState from, SessionState to) {
    if (to == SessionState::failed) {
        return from != SessionState::done && from != SessionState::failed;
    }
    switch (from) {
        case SessionState::idle: return to == SessionState::configuring;
        case SessionState::configuring: return to == SessionState::streaming;
        case SessionState::streaming: return to == SessionState::draining;
        case SessionState::draining:
            return to == SessionState::streaming || to == SessionState::evaluating;
        case SessionState::evaluating: return to == SessionState::done;
        case SessionState::done:
        case SessionState::failed: return false;
    }
    return false;
}

void SessionStateMachine::transition(SessionState next) {
    if (!legal_transition(state_, next)) {
        throw std::logic_error(std::string("illegal session transition ") + to_string(state_) +
                               " -> " + to_string(next));
    }
    state_ = next;
}

ResultCollector::ResultCollector(std::string session_id, std::vector<std::string> target_ids,
                                 std::vector<uint64_t> frame_ids)
    : session_id_(std::move(session_id)),
      target_ids_(std::move(target_ids)),
      frame_ids_(std::move(frame_ids)),
      frame_id_set_(frame_ids_.begin(), frame_ids_.end()) {}

ResultCollector::Outcome ResultCollector::collect(uint32_t run, bool published_this_run,
                                                  const protocol::ResultMessage& message,
                                                  std::span<const uint8_t> bytes,
                                                  double received_at_s) {
    if (message.session_id != session_id_) return Outcome::wrong_session;
    if (std::find(target_ids_.begin(), target_ids_.end(), message.target_id) ==
        target_ids_.end()) {
        return Outcome::unknown_target;
    }
    if (frame_id_set_.count(message.frame_id) == 0) return Outcome::unknown_frame;

    auto& target_last = last_bytes_[message.target_id];
    if (!published_this_run) {
        // Only an at-least-once duplicate of an already-stored result may
        // precede its frame's publication.
        const auto last = target_last.find(message.frame_id);
        if (last != target_last.end() && last->second.size() == bytes.size() &&
            std::equal(bytes.begin(), bytes.end(), last->second.begin())) {
            return Outcome::straggler_ignored;
        }
        return Outcome::unexpected;
    }

    auto& target_store = store_[message.target_id];
    const auto key = std::make_pair(run, message.frame_id);
    const auto it = target_store.find(key);
    if (it != target_store.end()) {
        const std::vector<uint8_t>& stored = it->second.bytes;
        if (stored.size() == bytes.size() && std::equal(bytes.begin(), bytes.end(), stored.begin())) {
            return Outcome::duplicate_ignored;
        }
        return Outcome::conflict;
    }
    StoredResult stored;
    stored.message = message;
    stored.bytes.assign(bytes.begin(), bytes.end());
    stored.received_at_s = received_at_s;
    target_last[message.frame_id] = stored.bytes;
    target_store.emplace(key, std::move(stored));
    ++total_stored_;
    return Outcome::stored;
}

size_t ResultCollector::stored_in_run(const std::string& target_id, uint32_t run) const {
    const auto target_it = store_.find(target_id);
    if (target_it == store_.end()) return 0;
    const auto& target_store = target_it->second;
    const auto begin = target_store.lower_bound({run, 0});
    const auto end = target_store.lower_bound({run + 1, 0});
    return static_cast<size_t>(std::distance(begin, end));
}

const StoredResult* ResultCollector::find(const std::string& target_id, uint32_t run,
                                          uint64_t frame_id) const {
    const auto target_it = store_.find(target_id);
    if (target_it == store_.end()) return nullptr;
    const auto it = target_it->second.find({run, frame_id});
    return it == target_it->second.end() ? nullptr : &it->second;
}

std::vector<uint64_t> ResultCollector::missing_in_run(const std::string& target_id,
                                                      uint32_t run) const {
    std::vector<uint64_t> missing;
    for (const uint64_t frame_id : frame_ids_) {
        if (find(target_id, run, frame_id) == nullptr) missing.push_back(frame_id);
    }
    return missing;
}

}  // namespace edgebench::host
