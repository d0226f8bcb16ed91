// Copyright 2026 The edgebench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Tiny harness for the acceptance suite: each criterion is one function;
// the runner prints exactly one PASS/FAIL line per criterion.

namespace edgebench::acceptance {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Criterion {
    int id;
    std::string name;
    std::function<void()> run;
};

std::vector<Criterion>& criteria();

#define ACCEPT(condition)                                                                  \
    do {                                                                                   \
        if (!(condition)) {                                                                \
            std::ostringstream os_;                                                        \
            os_ << "check failed: " #condition " (" << __FILE__ << ":" << __LINE__ << ")"; \
            throw ::edgebench::acceptance::Failure(os_.str());                             \
        }                                                                                  \
    } while (0)

#define ACCEPT_MSG(condition, message)                                                      \
    do {                                                                                    \
        if (!(condition)) {                                                                 \
            std::ostringstream os_;                                                         \
            os_ << "check failed: " #condition " -- " << message << " (" << __FILE__ << ":" \
                << __LINE__ << ")";                                                         \
            throw ::edgebench::acceptance::Failure(os_.str());                              \
        }                                                                                   \
    } while (0)

}  // namespace edgebench::acceptance
