// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace senspick::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `senspick` tool. Diagnostics and the effective
/// configuration go to `err`; machine-readable output goes to `out` or to
/// files named by flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace senspick::cli
