// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace rdmrep::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kNotRepresentable = 1,
  kInputError = 2,
  kNotConverged = 3,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdmrep::cli
