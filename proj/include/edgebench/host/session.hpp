// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "edgebench/protocol/messages.hpp"

namespace edgebench::host {

// Session lifecycle. streaming <-> draining repeats once per run; failed is
// reachable from every non-terminal state.
enum class SessionState { idle, configuring, streaming, draining, evaluating, done, failed };

const char* to_string(SessionState state);
bool legal_transition(SessionState from, SessionState to);

class SessionStateMachine {
public:
    SessionState state() const { return state_; }
    // Throws std::logic_error on an illegal transition.
    void transition(SessionState next);

private:
    SessionState state_ = SessionState::idle;
};

struct StoredResult {
    protocol::ResultMessage message;
    std::vector<uint8_t> bytes;
    double received_at_s = 0.0;
};

// Per-target result store keyed by (run, frame_id), with at-least-once
// dedup: a result byte-identical to the stored value for its key (or to the
// most recently stored value for the same frame, for duplicates straddling a
// run boundary) is ignored; a conflicting duplicate fails the session.
class ResultCollector {
public:
    enum class Outcome {
        stored,
        duplicate_ignored,
        straggler_ignored,
        conflict,
        unknown_target,
        unknown_frame,
        wrong_session,
        unexpected,  // result for a frame not yet published this run
    };

    ResultCollector(std::string session_id, std::vector<std::string> target_ids,
                    std::vector<uint64_t> frame_ids);

    Outcome collect(uint32_t run, bool published_this_run, const protocol::ResultMessage& message,
                    std::span<const uint8_t> bytes, double received_at_s);

    size_t total_stored() const { return total_stored_; }
    size_t stored_in_run(const std::string& target_id, uint32_t run) const;
    const StoredResult* find(const std::string& target_id, uint32_t run, uint64_t frame_id) const;
    std::vector<uint64_t> missing_in_run(const std::string& target_id, uint32_t run) const;
    const std::vector<std::string>& target_ids() const { return target_ids_; }
    const std::vector<uint64_t>& frame_ids() const { return frame_ids_; }

private:
    std::string session_id_;
    std::vector<std::string> target_ids_;
    std::vector<uint64_t> frame_ids_;
    std::set<uint64_t> frame_id_set_;
    // target -> (run, frame) -> result
    std::map<std::string, std::map<std::pair<uint32_t, uint64_t>, StoredResult>> store_;
    // target -> frame -> bytes of the most recently stored result
    std::map<std::string, std::map<uint64_t, std::vector<uint8_t>>> last_bytes_;
    size_t total_stored_ = 0;
};

}  // namespace edgebench::host
