// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/host/evaluators.hpp"

#include <bit>
#include <stdexcept>

#include "edgebench/common/hash.hpp"
#include "edgebench/metrics/detection_metrics.hpp"
#include "edgebench/metrics/power.hpp"
#include "edgebench/metrics/timing.hpp"

namespace edgebench::host {

namespace {

using nlohmann::ordered_json;

std::vector<metrics::FrameDetections> run_detections(const ResultCollector& results,
                                                     const std::string& target_id, uint32_t run) {
    std::vector<metrics::FrameDetections> frames;
    frames.reserve(results.frame_ids().size());
    for (const uint64_t frame_id : results.frame_ids()) {
        const StoredResult* stored = results.find(target_id, run, frame_id);
        if (stored == nullptr) {
            throw std::runtime_error("missing result for frame " + std::to_string(frame_id));
        }
        frames.push_back(metrics::FrameDetections{frame_id, stored->message.detections});
    }
    return frames;
}

class AccuracyEvaluator final : public EvaluatorPlugin {
public:
    std::string name() const override { return "accuracy"; }

    ordered_json evaluate(const EvaluatorContext& context, const std::string& target_id,
                          TargetEvaluation& typed) override {
        // mAP is computed once per session from run 1; detectors are
        // deterministic across runs.
        const auto frames = run_detections(context.results, target_id, 1);
        const auto ground_truth = context.dataset.all_ground_truth();
        const metrics::MapResult result = metrics::map_50_95(frames, ground_truth);
        typed.accuracy = result;

        ordered_json fragment;
        fragment["map_50_95"] = result.map_50_95;
        fragment["per_iou_map"] = result.per_iou;
        return fragment;
    }
};

class TimingEvaluator final : public EvaluatorPlugin {
public:
    std::string name() const override { return "timing"; }

    ordered_json evaluate(const EvaluatorContext& context, const std::string& target_id,
                          TargetEvaluation& typed) override {
        std::vector<metrics::TimingRecord> records;
        for (uint32_t run = 1; run <= context.config.run_count; ++run) {
            for (const uint64_t frame_id : context.results.frame_ids()) {
                const StoredResult* stored = context.results.find(target_id, run, frame_id);
                if (stored == nullptr) {
                    throw std::runtime_error("missing result for run " + std::to_string(run) +
                                             " frame " + std::to_string(frame_id));
                }
                records.push_back(metrics::TimingRecord{frame_id, stored->message.pre_ms,
                                                        stored->message.infer_ms,
                                                        stored->message.post_ms});
            }
        }
        const metrics::TimingSummary summary = metrics::aggregate_timing(records);
        typed.timing = summary;
        typed.records = std::move(records);

        ordered_json fragment;
        fragment["mean_pre_ms"] = summary.mean_pre_ms;
        fragment["mean_infer_ms"] = summary.mean_infer_ms;
        fragment["mean_post_ms"] = summary.mean_post_ms;
        fragment["mean_total_ms"] = summary.mean_total_ms;
        fragment["fps"] = summary.fps;
        fragment["record_count"] = summary.record_count;
        return fragment;
    }
};

class PowerEvaluator final : public EvaluatorPlugin {
public:
    std::string name() const override { return "power"; }

    ordered_json evaluate(const EvaluatorContext& context, const std::string& target_id,
                          TargetEvaluation& typed) override {
        const auto spec_it = context.power_specs.find(target_id);
        if (spec_it == context.power_specs.end()) {
            return ordered_json{{"skipped", "no power log configured"}};
        }
        const PowerSpec& spec = spec_it->second;
        const auto samples = metrics::parse_power_log(spec.log_path);

        // Absolute power is measured per run over [first frame published,
        // last result received], then averaged across runs.
        double absolute_sum = 0.0;
        bool any_clamped = false;
        for (const RunWindow& window : context.run_windows) {
            const metrics::PowerSummary run_summary =
                metrics::power_from_log(samples, window.start_s, window.end_s, spec.idle_w);
            absolute_sum += run_summary.absolute_w;
            any_clamped = any_clamped || run_summary.clamped;
        }
        metrics::PowerSummary mean;
        mean.absolute_w = absolute_sum / static_cast<double>(context.run_windows.size());
        mean.relative_w = mean.absolute_w - spec.idle_w;
        mean.clamped = any_clamped || mean.relative_w < 0.0;
        if (mean.relative_w < 0.0) mean.relative_w = 0.0;

        if (!typed.timing) {
            throw std::runtime_error("power evaluator requires timing (efficiency = fps/W)");
        }
        const metrics::PowerReport report =
            metrics::make_power_report(mean, spec.idle_w, typed.timing->fps);
        typed.power = report;

        ordered_json fragment;
        fragment["absolute_w"] = report.absolute_w;
        fragment["idle_w"] = report.idle_w;
        fragment["relative_w"] = report.relative_w;
        if (report.efficiency_fps_per_w) {
            fragment["efficiency_fps_per_w"] = *report.efficiency_fps_per_w;
        } else {
            fragment["efficiency_fps_per_w"] = nullptr;
        }
        fragment["clamped"] = report.clamped;
        return fragment;
    }
};

}  // namespace

void EvaluatorRegistry::register_evaluator(const std::string& name,
                                           std::shared_ptr<EvaluatorPlugin> plugin) {
    if (!plugin) throw std::invalid_argument("register_evaluator: null plugin");
    if (plugin->name() != name) {
        throw std::invalid_argument("register_evaluator: name mismatch");
    }
    for (const auto& existing : plugins_) {
        if (existing->name() == name) {
            throw std::invalid_argument("register_evaluator: duplicate name '" + name + "'");
        }
    }
    plugins_.push_back(std::move(plugin));
}

EvaluatorRegistry EvaluatorRegistry::with_defaults() {
    EvaluatorRegistry registry;
    registry.register_evaluator("accuracy", make_accuracy_evaluator());
    registry.register_evaluator("timing", make_timing_evaluator());
    registry.register_evaluator("power", make_power_evaluator());
    return registry;
}

std::shared_ptr<EvaluatorPlugin> make_accuracy_evaluator() {
    return std::make_shared<AccuracyEvaluator>();
}
std::shared_ptr<EvaluatorPlugin> make_timing_evaluator() {
    return std::make_shared<TimingEvaluator>();
}
std::shared_ptr<EvaluatorPlugin> make_power_evaluator() {
    return std::make_shared<PowerEvaluator>();
}

uint64_t detections_digest(const ResultCollector& results, const std::string& target_id) {
    uint64_t digest = 0xcbf29ce484222325ULL;
    const auto mix = [&digest](uint64_t value) { digest = fnv1a(&value, sizeof(value), digest); };
    for (const uint64_t frame_id : results.frame_ids()) {
        const StoredResult* stored = results.find(target_id, 1, frame_id);
        if (stored == nullptr) continue;
        mix(frame_id);
        for (const vision::Detection& det : stored->message.detections) {
            mix(static_cast<uint64_t>(det.class_id));
            mix(std::bit_cast<uint64_t>(det.confidence));
            mix(std::bit_cast<uint64_t>(det.box.x0));
            mix(std::bit_cast<uint64_t>(det.box.y0));
            mix(std::bit_cast<uint64_t>(det.box.x1));
            mix(std::bit_cast<uint64_t>(det.box.y1));
        }
    }
    return digest;
}

}  // namespace edgebench::host
