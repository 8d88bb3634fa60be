// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <iostream>
#include <string>
#include <vector>

#include "isynas/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return isynas::cli::run(args, std::cout, std::cerr);
}
