// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <thread>

#include <CLI11.hpp>

#include "edgebench/agent/target_agent.hpp"
#include "edgebench/cli/entry_points.hpp"
#include "edgebench/common/log.hpp"
#include "edgebench/host/dataset.hpp"
#include "edgebench/transport/mqtt_client.hpp"

namespace edgebench::cli {

namespace {

std::atomic<bool> g_stop_requested{false};

void handle_signal(int) { g_stop_requested.store(true); }

}  // namespace

int target_main(int argc, char** argv) {
    CLI::App app{"edgebench target: connects to the broker and serves evaluation sessions "
                 "until terminated"};

    std::string broker = "127.0.0.1:1883";
    std::string target_id;
    std::string gt_path;
    uint64_t seed = 0;
    double drop = 0.0;
    double fp_rate = 0.0;
    double jitter_px = 0.0;
    double conf_noise = 0.0;
    double pre_ms = 0.0;
    double infer_ms = 0.0;
    double post_ms = 0.0;
    double timing_jitter_ms = 0.0;
    int connect_retries = 5;
    double retry_backoff_s = 1.0;
    bool list_plugins = false;

    app.add_option("--broker", broker, "Broker address host:port");
    app.add_option("--target-id", target_id, "Unique target id");
    app.add_option("--gt", gt_path, "Ground-truth annotation JSON for the replay mock");
    app.add_option("--seed", seed, "Mock perturbation seed");
    app.add_option("--drop", drop, "Mock: drop probability per ground-truth box");
    app.add_option("--fp-rate", fp_rate, "Mock: false-positive probability per frame");
    app.add_option("--jitter-px", jitter_px, "Mock: coordinate jitter in source pixels");
    app.add_option("--conf-noise", conf_noise, "Mock: confidence noise fraction");
    app.add_option("--pre-ms", pre_ms, "Mock: synthetic pre-process latency");
    app.add_option("--infer-ms", infer_ms, "Mock: synthetic inference latency");
    app.add_option("--post-ms", post_ms, "Mock: synthetic post-process latency");
    app.add_option("--timing-jitter-ms", timing_jitter_ms, "Mock: latency jitter per stage");
    app.add_option("--connect-retries", connect_retries, "Broker connection attempts");
    app.add_option("--retry-backoff-s", retry_backoff_s, "Base backoff between attempts");
    app.add_flag("--list-plugins", list_plugins, "Print registered detector plugins and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    }

    try {
        agent::MockDetectorConfig mock;
        if (!gt_path.empty()) mock.ground_truth = host::load_ground_truth(gt_path);
        mock.drop_probability = drop;
        mock.false_positive_rate = fp_rate;
        mock.coordinate_jitter_px = jitter_px;
        mock.confidence_noise = conf_noise;
        mock.pre_ms = pre_ms;
        mock.infer_ms = infer_ms;
        mock.post_ms = post_ms;
        mock.timing_jitter_ms = timing_jitter_ms;
        mock.seed = seed;

        agent::DetectorRegistry registry;
        agent::register_replay_mock(registry, std::move(mock));

        if (list_plugins) {
            for (const std::string& name : registry.names()) std::printf("%s\n", name.c_str());
            return 0;
        }
        if (target_id.empty()) {
            std::fprintf(stderr, "bench_target: --target-id is required\n");
            return 2;
        }

        const size_t colon = broker.rfind(':');
        transport::MqttClient::Options options;
        options.host = colon == std::string::npos ? broker : broker.substr(0, colon);
        options.port = colon == std::string::npos
                           ? uint16_t{1883}
                           : static_cast<uint16_t>(std::stoi(broker.substr(colon + 1)));
        options.client_id = target_id;

        transport::MqttClient client(options);
        bool connected = false;
        for (int attempt = 1; attempt <= connect_retries; ++attempt) {
            try {
                client.connect();
                connected = true;
                break;
            } catch (const transport::TransportError& err) {
                log::warn("connect attempt ", attempt, "/", connect_retries, ": ", err.what());
                if (attempt < connect_retries) {
                    std::this_thread::sleep_for(
                        std::chrono::duration<double>(retry_backoff_s * attempt));
                }
            }
        }
        if (!connected) {
            std::fprintf(stderr, "bench_target: broker %s unreachable after %d attempts\n",
                         broker.c_str(), connect_retries);
            return 1;
        }

        // All session setup arrives over the broker from here on.
        agent::TargetAgent::Options agent_options;
        agent_options.target_id = target_id;
        agent::TargetAgent agent(
            std::shared_ptr<transport::PubSubEndpoint>(&client, [](transport::PubSubEndpoint*) {}),
            std::move(registry), agent_options);
        agent.start();
        std::printf("bench_target %s ready (broker %s)\n", target_id.c_str(), broker.c_str());

        std::signal(SIGTERM, handle_signal);
        std::signal(SIGINT, handle_signal);
        while (!g_stop_requested.load() && client.connected()) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        }
        const bool broker_lost = !client.connected() && !g_stop_requested.load();

        agent.stop();
        client.disconnect();
        if (broker_lost) {
            std::fprintf(stderr, "bench_target: broker connection lost\n");
            return 1;
        }
        return 0;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "bench_target: %s\n", err.what());
        return 1;
    }
}

}  // namespace edgebench::cli
