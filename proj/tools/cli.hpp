// Copyright 2026 The pdmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdmm::cli {

enum ExitStatus : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (without the program name). The default output
/// format is read from PDMM_FORMAT when --format is not given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdmm::cli
