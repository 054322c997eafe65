// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rdmrep::cli::run_cli(argc, argv, std::cout, std::cerr); }
