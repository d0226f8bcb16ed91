// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/metrics/power.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edgebench/common/log.hpp"

namespace edgebench::metrics {

std::vector<PowerSample> parse_power_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("power log " + path.string() + ": cannot open");

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("power log " + path.string() + ": empty file");
    }
    // Tolerate a UTF-8 BOM and trailing CR.
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t_seconds,watts") {
        throw std::runtime_error("power log " + path.string() +
                                 ": expected header 't_seconds,watts', got '" + line + "'");
    }

    std::vector<PowerSample> samples;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        PowerSample sample;
        char comma = 0;
        if (!(row >> sample.t_seconds >> comma >> sample.watts) || comma != ',') {
            throw std::runtime_error("power log " + path.string() + ": bad row at line " +
                                     std::to_string(line_no));
        }
        if (sample.watts < 0.0) {
            throw std::runtime_error("power log " + path.string() + ": negative watts at line " +
                                     std::to_string(line_no));
        }
        if (!samples.empty() && sample.t_seconds < samples.back().t_seconds) {
            throw std::runtime_error("power log " + path.string() +
                                     ": samples out of order at line " + std::to_string(line_no));
        }
        samples.push_back(sample);
    }
    return samples;
}

PowerSummary power_from_log(std::span<const PowerSample> samples, double t_start, double t_end,
                            double idle_w) {
    if (!(t_end >= t_start)) {
        throw std::invalid_argument("power_from_log: empty window");
    }
    if (idle_w < 0.0) {
        throw std::invalid_argument("power_from_log: negative idle power");
    }
    double sum = 0.0;
    size_t count = 0;
    for (const PowerSample& sample : samples) {
        if (sample.t_seconds < t_start || sample.t_seconds > t_end) continue;
        sum += sample.watts;
        ++count;
    }
    if (count == 0) {
        throw std::invalid_argument("power_from_log: no samples inside window");
    }
    PowerSummary summary;
    summary.absolute_w = sum / static_cast<double>(count);
    summary.relative_w = summary.absolute_w - idle_w;
    if (summary.relative_w < 0.0) {
        log::warn("relative power ", summary.relative_w, " W clamped to 0 (idle ", idle_w,
                  " W exceeds absolute ", summary.absolute_w, " W)");
        summary.relative_w = 0.0;
        summary.clamped = true;
    }
    return summary;
}

double efficiency(double fps, double relative_w) {
    if (!(relative_w > 0.0)) {
        throw std::invalid_argument("efficiency: relative power must be positive");
    }
    return fps / relative_w;
}

}  // namespace edgebench::metrics
