// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace edgebench::metrics {

struct PowerSample {
    double t_seconds = 0.0;  // seconds since session epoch
    double watts = 0.0;
};

struct PowerSummary {
    double absolute_w = 0.0;
    double relative_w = 0.0;
    // Set when absolute - idle was negative and clamped to zero.
    bool clamped = false;
};

// Parses a power log: CSV with header "t_seconds,watts". Samples must be
// time-ordered and non-negative; throws std::runtime_error otherwise.
std::vector<PowerSample> parse_power_log(const std::filesystem::path& path);

// Mean power over samples with t in [t_start, t_end], minus idle power.
// Throws std::invalid_argument when the window is empty, contains no
// samples, or idle_w is negative.
PowerSummary power_from_log(std::span<const PowerSample> samples, double t_start, double t_end,
                            double idle_w);

// FPS per watt of relative power. Throws std::invalid_argument unless
// relative_w > 0.
double efficiency(double fps, double relative_w);

}  // namespace edgebench::metrics
