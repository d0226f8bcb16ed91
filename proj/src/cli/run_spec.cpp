// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/cli/run_spec.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "edgebench/protocol/topics.hpp"

namespace edgebench::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& what) {
    throw std::invalid_argument("run spec: " + what);
}

void check_known_keys(const json& object, const std::set<std::string>& known,
                      const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (known.count(key) == 0) bad_spec("unknown key '" + key + "' in " + where);
    }
}

MockParams parse_mock(const json& object) {
    check_known_keys(object,
                     {"drop_probability", "false_positive_rate", "coordinate_jitter_px",
                      "confidence_noise", "pre_ms", "infer_ms", "post_ms", "timing_jitter_ms",
                      "seed"},
                     "mock");
    MockParams mock;
    mock.drop_probability = object.value("drop_probability", 0.0);
    mock.false_positive_rate = object.value("false_positive_rate", 0.0);
    mock.coordinate_jitter_px = object.value("coordinate_jitter_px", 0.0);
    mock.confidence_noise = object.value("confidence_noise", 0.0);
    mock.pre_ms = object.value("pre_ms", 0.0);
    mock.infer_ms = object.value("infer_ms", 0.0);
    mock.post_ms = object.value("post_ms", 0.0);
    mock.timing_jitter_ms = object.value("timing_jitter_ms", 0.0);
    mock.seed = object.value("seed", uint64_t{0});
    return mock;
}

}  // namespace

void HostRunSpec::validate() const {
    if (broker.empty()) bad_spec("empty broker");
    if (dataset_dir.empty() || !std::filesystem::is_directory(dataset_dir)) {
        bad_spec("dataset_dir '" + dataset_dir.string() + "' is not a directory");
    }
    if (annotations.empty() || !std::filesystem::is_regular_file(annotations)) {
        bad_spec("annotations file '" + annotations.string() + "' does not exist");
    }
    if (confidence_threshold < 0.0 || confidence_threshold > 1.0) {
        bad_spec("confidence_threshold outside [0,1]");
    }
    if (nms_threshold < 0.0 || nms_threshold > 1.0) bad_spec("nms_threshold outside [0,1]");
    if (run_count < 1) bad_spec("run_count must be >= 1");
    if (model_input_width == 0 || model_input_height == 0) bad_spec("zero model input size");
    if (targets.empty()) bad_spec("no targets");
    std::set<std::string> ids;
    for (const TargetSpec& target : targets) {
        if (!protocol::valid_id(target.id)) bad_spec("invalid target id '" + target.id + "'");
        if (!ids.insert(target.id).second) bad_spec("duplicate target id '" + target.id + "'");
        if (target.power_log) {
            if (!std::filesystem::is_regular_file(*target.power_log)) {
                bad_spec("power log '" + target.power_log->string() + "' does not exist");
            }
            if (!target.idle_watts) {
                bad_spec("target '" + target.id + "' has a power log but no idle_watts");
            }
        }
        if (target.idle_watts && *target.idle_watts < 0.0) {
            bad_spec("negative idle_watts for target '" + target.id + "'");
        }
    }
    if (!session_id.empty() && !protocol::valid_id(session_id)) {
        bad_spec("invalid session_id '" + session_id + "'");
    }
    if (max_in_flight < 1) bad_spec("max_in_flight must be >= 1");
    if (config_ack_timeout_s <= 0.0 || drain_timeout_s <= 0.0) bad_spec("non-positive timeout");
}

HostRunSpec parse_run_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad_spec("cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& err) {
        bad_spec(std::string("parse error: ") + err.what());
    }
    if (!doc.is_object()) bad_spec("top level must be an object");
    check_known_keys(doc,
                     {"broker", "dataset_dir", "annotations", "out_dir", "session", "targets",
                      "timeouts", "max_in_flight", "loopback"},
                     "top level");

    HostRunSpec spec;
    try {
        spec.broker = doc.value("broker", spec.broker);
        if (doc.contains("dataset_dir")) spec.dataset_dir = doc["dataset_dir"].get<std::string>();
        if (doc.contains("annotations")) spec.annotations = doc["annotations"].get<std::string>();
        if (doc.contains("out_dir")) spec.out_dir = doc["out_dir"].get<std::string>();

        if (doc.contains("session")) {
            const json& session = doc["session"];
            check_known_keys(session,
                             {"session_id", "detector", "confidence_threshold", "nms_threshold",
                              "run_count", "echo_annotated_images", "model_input_width",
                              "model_input_height", "precision_label"},
                             "session");
            spec.session_id = session.value("session_id", spec.session_id);
            spec.detector = session.value("detector", spec.detector);
            spec.confidence_threshold =
                session.value("confidence_threshold", spec.confidence_threshold);
            spec.nms_threshold = session.value("nms_threshold", spec.nms_threshold);
            spec.run_count = session.value("run_count", spec.run_count);
            spec.echo_annotated_images =
                session.value("echo_annotated_images", spec.echo_annotated_images);
            spec.model_input_width = session.value("model_input_width", spec.model_input_width);
            spec.model_input_height = session.value("model_input_height", spec.model_input_height);
            spec.precision_label = session.value("precision_label", spec.precision_label);
        }

        if (doc.contains("targets")) {
            for (const json& entry : doc["targets"]) {
                check_known_keys(entry, {"id", "power_log", "idle_watts", "mock"}, "target");
                TargetSpec target;
                target.id = entry.at("id").get<std::string>();
                if (entry.contains("power_log")) {
                    target.power_log = entry["power_log"].get<std::string>();
                }
                if (entry.contains("idle_watts")) {
                    target.idle_watts = entry["idle_watts"].get<double>();
                }
                if (entry.contains("mock")) target.mock = parse_mock(entry["mock"]);
                spec.targets.push_back(std::move(target));
            }
        }

        if (doc.contains("timeouts")) {
            const json& timeouts = doc["timeouts"];
            check_known_keys(timeouts, {"config_ack_s", "drain_s"}, "timeouts");
            spec.config_ack_timeout_s = timeouts.value("config_ack_s", spec.config_ack_timeout_s);
            spec.drain_timeout_s = timeouts.value("drain_s", spec.drain_timeout_s);
        }
        spec.max_in_flight = doc.value("max_in_flight", spec.max_in_flight);

        if (doc.contains("loopback")) {
            const json& loopback = doc["loopback"];
            check_known_keys(loopback,
                             {"duplicate_probability", "delay_min_ms", "delay_max_ms", "seed"},
                             "loopback");
            spec.loopback.duplicate_probability =
                loopback.value("duplicate_probability", spec.loopback.duplicate_probability);
            spec.loopback.delay_min_ms = loopback.value("delay_min_ms", spec.loopback.delay_min_ms);
            spec.loopback.delay_max_ms = loopback.value("delay_max_ms", spec.loopback.delay_max_ms);
            spec.loopback.seed = loopback.value("seed", spec.loopback.seed);
        }
    } catch (const json::exception& err) {
        bad_spec(std::string("bad value: ") + err.what());
    }
    return spec;
}

}  // namespace edgebench::cli
