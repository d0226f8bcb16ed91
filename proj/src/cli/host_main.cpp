// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>
#include <ctime>

#include <CLI11.hpp>

#include "edgebench/agent/target_agent.hpp"
#include "edgebench/cli/entry_points.hpp"
#include "edgebench/cli/report_writer.hpp"
#include "edgebench/cli/run_spec.hpp"
#include "edgebench/common/log.hpp"
#include "edgebench/host/orchestrator.hpp"
#include "edgebench/protocol/topics.hpp"
#include "edgebench/transport/loopback.hpp"
#include "edgebench/transport/mqtt_client.hpp"

namespace edgebench::cli {

namespace {

std::string generated_session_id() {
    return "s" + std::to_string(
                     std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count());
}

std::string now_iso8601() {
    const std::time_t now = std::time(nullptr);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

// "key=value" pairs from repeated flags.
std::pair<std::string, std::string> split_kv(const std::string& text, const char* what) {
    const size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument(std::string(what) + " expects target=value, got '" + text +
                                    "'");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

std::pair<std::string, uint16_t> split_host_port(const std::string& broker) {
    const size_t colon = broker.rfind(':');
    if (colon == std::string::npos) return {broker, 1883};
    const int port = std::stoi(broker.substr(colon + 1));
    if (port <= 0 || port > 65535) throw std::invalid_argument("bad broker port in " + broker);
    return {broker.substr(0, colon), static_cast<uint16_t>(port)};
}

agent::DetectorRegistry build_registry(const MockParams& mock,
                                       agent::GroundTruthTable ground_truth) {
    agent::MockDetectorConfig config;
    config.ground_truth = std::move(ground_truth);
    config.drop_probability = mock.drop_probability;
    config.false_positive_rate = mock.false_positive_rate;
    config.coordinate_jitter_px = mock.coordinate_jitter_px;
    config.confidence_noise = mock.confidence_noise;
    config.pre_ms = mock.pre_ms;
    config.infer_ms = mock.infer_ms;
    config.post_ms = mock.post_ms;
    config.timing_jitter_ms = mock.timing_jitter_ms;
    config.seed = mock.seed;

    agent::DetectorRegistry registry;
    agent::register_replay_mock(registry, std::move(config));
    registry.register_plugin("null", [](const protocol::SessionConfig&) {
        class NullDetector final : public agent::DetectorPlugin {
        public:
            std::vector<vision::RawDetection> infer(const vision::PreprocessedFrame&,
                                                    const agent::FrameInfo&) override {
                return {};
            }
        };
        return std::make_unique<NullDetector>();
    });
    return registry;
}

int run_host(const HostRunSpec& spec) {
    const host::Dataset dataset = host::load_dataset(spec.dataset_dir, spec.annotations);
    std::filesystem::create_directories(spec.out_dir);

    host::SessionOptions options;
    options.config.session_id = spec.session_id.empty() ? generated_session_id() : spec.session_id;
    options.config.detector_name = spec.detector;
    options.config.confidence_threshold = spec.confidence_threshold;
    options.config.nms_threshold = spec.nms_threshold;
    options.config.run_count = spec.run_count;
    options.config.echo_annotated_images = spec.echo_annotated_images;
    options.config.model_input_width = spec.model_input_width;
    options.config.model_input_height = spec.model_input_height;
    options.config_ack_timeout_s = spec.config_ack_timeout_s;
    options.drain_timeout_s = spec.drain_timeout_s;
    options.delivery.max_in_flight = spec.max_in_flight;
    options.echo_dir = spec.out_dir / "annotated";
    for (const TargetSpec& target : spec.targets) {
        options.target_ids.push_back(target.id);
        if (target.power_log) {
            options.power_specs[target.id] =
                host::PowerSpec{*target.power_log, target.idle_watts.value_or(0.0)};
        }
    }

    const std::string started_at = now_iso8601();
    const host::EvaluatorRegistry evaluators = host::EvaluatorRegistry::with_defaults();
    host::SessionOutcome outcome;

    if (spec.broker == "loopback") {
        // Single-process mode: broker, host, and simulated targets in one
        // process.
        transport::LoopbackBroker broker(spec.loopback);
        std::vector<std::unique_ptr<agent::TargetAgent>> agents;
        std::vector<std::shared_ptr<transport::LoopbackEndpoint>> endpoints;
        for (const TargetSpec& target : spec.targets) {
            auto endpoint = broker.connect(target.id);
            endpoints.push_back(endpoint);
            agent::TargetAgent::Options agent_options;
            agent_options.target_id = target.id;
            agents.push_back(std::make_unique<agent::TargetAgent>(
                endpoint, build_registry(target.mock, dataset.ground_truth_table()),
                agent_options));
            agents.back()->start();
        }
        auto host_endpoint = broker.connect("host");
        outcome = host::run_session(*host_endpoint, dataset, options, evaluators);
        for (auto& agent : agents) agent->stop();
    } else {
        const auto [host_name, port] = split_host_port(spec.broker);
        transport::MqttClient::Options mqtt_options;
        mqtt_options.host = host_name;
        mqtt_options.port = port;
        mqtt_options.client_id = "host-" + options.config.session_id;
        transport::MqttClient client(mqtt_options);
        client.connect();
        outcome = host::run_session(client, dataset, options, evaluators);
        client.disconnect();
    }

    // One report per target plus the flat summary.
    std::vector<std::string> csv_rows;
    for (const std::string& target_id : options.target_ids) {
        ReportInputs inputs;
        inputs.config = options.config;
        if (inputs.config.input_topic.empty()) {
            inputs.config.input_topic =
                protocol::topic_for(inputs.config.session_id, protocol::TopicKind::input);
        }
        if (inputs.config.result_topic.empty()) {
            inputs.config.result_topic = "bench/" + inputs.config.session_id + "/result";
        }
        inputs.target_id = target_id;
        inputs.precision_label = spec.precision_label;
        inputs.state = outcome.final_state;
        inputs.failure_reason = outcome.failure_reason;
        inputs.started_at = started_at;
        inputs.wall_seconds = outcome.wall_seconds;
        const auto it = outcome.targets.find(target_id);
        if (it != outcome.targets.end()) {
            inputs.missing_frames = it->second.missing_frames;
            inputs.detections_digest = it->second.detections_digest;
            inputs.fragments = it->second.fragments;
            inputs.evaluator_errors = it->second.evaluator_errors;
            inputs.report = it->second.report;
        }
        write_report_json(spec.out_dir / ("report_" + target_id + ".json"),
                          build_report_document(inputs));
        csv_rows.push_back(csv_summary_row(inputs));
    }
    write_csv_summary(spec.out_dir / "summary.csv", csv_rows);

    if (!outcome.done()) {
        std::fprintf(stderr, "session %s failed: %s\n", options.config.session_id.c_str(),
                     outcome.failure_reason.c_str());
        return 1;
    }
    for (const std::string& target_id : options.target_ids) {
        const auto& target = outcome.targets[target_id];
        if (target.report) {
            std::printf("%s: mAP(0.5:0.95) %.4f, mean total %.3f ms, %.2f fps\n",
                        target_id.c_str(), target.report->accuracy.map_50_95,
                        target.report->timing.mean_total_ms, target.report->timing.fps);
        }
    }
    std::printf("reports written to %s\n", spec.out_dir.string().c_str());
    return 0;
}

}  // namespace

int host_main(int argc, char** argv) {
    CLI::App app{"edgebench host: distributes frames to targets over pub-sub and evaluates "
                 "detection accuracy, latency, and power"};

    std::string config_path;
    HostRunSpec overrides;
    std::string broker_flag;
    std::string dataset_flag;
    std::string annotations_flag;
    std::string out_flag;
    std::string targets_flag;
    std::string detector_flag;
    std::string session_id_flag;
    std::string precision_flag;
    double conf_thr = -1.0;
    double nms_thr = -1.0;
    int64_t runs = -1;
    int64_t model_w = -1;
    int64_t model_h = -1;
    bool echo = false;
    std::vector<std::string> power_logs;
    std::vector<std::string> idle_watts;

    app.add_option("--config", config_path, "Run-spec JSON file");
    app.add_option("--broker", broker_flag, "Broker address host:port, or 'loopback'");
    app.add_option("--dataset", dataset_flag, "Image directory");
    app.add_option("--annotations", annotations_flag, "COCO-format annotation JSON");
    app.add_option("--targets", targets_flag, "Comma-separated target ids");
    app.add_option("--detector", detector_flag, "Detector plugin name");
    app.add_option("--conf-thr", conf_thr, "Confidence threshold [0,1]");
    app.add_option("--nms-thr", nms_thr, "NMS IoU threshold [0,1]");
    app.add_option("--runs", runs, "Number of evaluation runs");
    app.add_option("--power-log", power_logs, "Per-target power log, target=path")
        ->take_all();
    app.add_option("--idle-watts", idle_watts, "Per-target idle power, target=watts")
        ->take_all();
    app.add_option("--out", out_flag, "Output directory");
    app.add_option("--session-id", session_id_flag, "Explicit session id");
    app.add_option("--model-width", model_w, "Model input width");
    app.add_option("--model-height", model_h, "Model input height");
    app.add_option("--precision-label", precision_flag, "Label for the CSV precision column");
    app.add_flag("--echo", echo, "Request annotated-image echoes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    }

    try {
        HostRunSpec spec;
        if (!config_path.empty()) spec = parse_run_spec(config_path);

        // Flags win over the config file.
        if (!broker_flag.empty()) spec.broker = broker_flag;
        if (!dataset_flag.empty()) spec.dataset_dir = dataset_flag;
        if (!annotations_flag.empty()) spec.annotations = annotations_flag;
        if (!out_flag.empty()) spec.out_dir = out_flag;
        if (!detector_flag.empty()) spec.detector = detector_flag;
        if (!session_id_flag.empty()) spec.session_id = session_id_flag;
        if (!precision_flag.empty()) spec.precision_label = precision_flag;
        if (conf_thr >= 0.0) spec.confidence_threshold = conf_thr;
        if (nms_thr >= 0.0) spec.nms_threshold = nms_thr;
        if (runs > 0) spec.run_count = static_cast<uint32_t>(runs);
        if (model_w > 0) spec.model_input_width = static_cast<uint32_t>(model_w);
        if (model_h > 0) spec.model_input_height = static_cast<uint32_t>(model_h);
        if (echo) spec.echo_annotated_images = true;
        if (!targets_flag.empty()) {
            spec.targets.clear();
            std::stringstream stream(targets_flag);
            std::string id;
            while (std::getline(stream, id, ',')) {
                if (!id.empty()) spec.targets.push_back(TargetSpec{id, {}, {}, {}});
            }
        }
        if (spec.targets.empty()) spec.targets.push_back(TargetSpec{"t1", {}, {}, {}});
        const auto target_by_id = [&spec](const std::string& id, const char* what) -> TargetSpec& {
            for (TargetSpec& t : spec.targets) {
                if (t.id == id) return t;
            }
            throw std::invalid_argument(std::string(what) + ": unknown target '" + id + "'");
        };
        for (const std::string& entry : power_logs) {
            const auto [target, path] = split_kv(entry, "--power-log");
            target_by_id(target, "--power-log").power_log = path;
        }
        for (const std::string& entry : idle_watts) {
            const auto [target, value] = split_kv(entry, "--idle-watts");
            target_by_id(target, "--idle-watts").idle_watts = std::stod(value);
        }

        spec.validate();
        return run_host(spec);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "bench_host: %s\n", err.what());
        return 1;
    }
}

}  // namespace edgebench::cli
