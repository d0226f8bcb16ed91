// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/protocol/topics.hpp"

#include <stdexcept>

namespace edgebench::protocol {

bool valid_id(std::string_view id) {
    if (id.empty()) return false;
    for (const char c : id) {
        if (c == '/' || c == '+' || c == '#' || c == '\0') return false;
    }
    return true;
}

std::string topic_for(std::string_view session_id, TopicKind kind, std::string_view target_id) {
    if (!valid_id(session_id)) {
        throw std::invalid_argument("topic_for: invalid session_id '" + std::string(session_id) +
                                    "'");
    }
    std::string topic = "bench/";
    topic += session_id;
    switch (kind) {
        case TopicKind::config:
            topic += "/config";
            return topic;
        case TopicKind::input:
            topic += "/input";
            return topic;
        case TopicKind::result:
            topic += "/result/";
            break;
        case TopicKind::status:
            topic += "/status/";
            break;
    }
    if (!valid_id(target_id)) {
        throw std::invalid_argument("topic_for: kind requires a valid target_id");
    }
    topic += target_id;
    return topic;
}

bool valid_filter(std::string_view filter) {
    if (filter.empty()) return false;
    size_t pos = 0;
    while (true) {
        const size_t end = filter.find('/', pos);
        const std::string_view level =
            filter.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (level.find('#') != std::string_view::npos) return false;
        if (level != "+" && level.find('+') != std::string_view::npos) return false;
        if (end == std::string_view::npos) return true;
        pos = end + 1;
    }
}

bool topic_matches(std::string_view filter, std::string_view topic) {
    size_t fpos = 0;
    size_t tpos = 0;
    while (true) {
        const size_t fend = filter.find('/', fpos);
        const size_t tend = topic.find('/', tpos);
        const std::string_view flevel =
            filter.substr(fpos, fend == std::string_view::npos ? std::string_view::npos
                                                               : fend - fpos);
        const std::string_view tlevel =
            topic.substr(tpos, tend == std::string_view::npos ? std::string_view::npos
                                                              : tend - tpos);
        if (flevel != "+" && flevel != tlevel) return false;
        const bool fdone = fend == std::string_view::npos;
        const bool tdone = tend == std::string_view::npos;
        if (fdone || tdone) return fdone && tdone;
        fpos = fend + 1;
        tpos = tend + 1;
    }
}

}  // namespace edgebench::protocol
