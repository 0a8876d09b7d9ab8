// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "senspick/cli.hpp"

int main(int argc, char** argv) { return senspick::cli::run(argc, argv, std::cout, std::cerr); }
