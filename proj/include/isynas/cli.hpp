// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isynas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 1;
inline constexpr int kExitInternal = 2;

/// Runs one subcommand. `args` excludes the program name. Primary output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isynas::cli
