// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#include "edgebench/cli/entry_points.hpp"

int main(int argc, char** argv) { return edgebench::cli::host_main(argc, argv); }
