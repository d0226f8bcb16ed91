// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace edgebench::cli {

// Host binary: drives evaluation sessions and writes reports.
int host_main(int argc, char** argv);

// Target binary: long-running agent process serving sessions over MQTT.
int target_main(int argc, char** argv);

}  // namespace edgebench::cli
