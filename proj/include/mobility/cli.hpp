// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mobility::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

/// Runs one subcommand. `args` excludes the program name. Data goes to the
/// files named by the flags; `out` receives a one-line JSON summary (or
/// help text) and `err` the diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobility::cli
