// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vview::run_cli(argc, argv, std::cout, std::cerr); }
