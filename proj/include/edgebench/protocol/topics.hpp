// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace edgebench::protocol {

// Topic scheme:
//   bench/<session_id>/config
//   bench/<session_id>/input
//   bench/<session_id>/result/<target_id>
//   bench/<session_id>/status/<target_id>
//
// The scheme is injective over (session_id, kind, target_id). Session and
// target ids must be non-empty and free of MQTT-special characters
// ('/', '+', '#').

enum class TopicKind { config, input, result, status };

// Reserved session id targets use for boot-time status before any session
// is configured.
inline constexpr std::string_view kBootSessionId = "_boot";

// Throws std::invalid_argument on empty/invalid ids or a missing target_id
// for kinds that require one.
std::string topic_for(std::string_view session_id, TopicKind kind,
                      std::string_view target_id = {});

bool valid_id(std::string_view id);

// Filters support literal levels and the single-level '+' wildcard; '#' and
// embedded wildcards ("a+b") are rejected.
bool valid_filter(std::string_view filter);
bool topic_matches(std::string_view filter, std::string_view topic);

}  // namespace edgebench::protocol
