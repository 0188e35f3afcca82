#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace clab::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kCapacity = 3 };

/// Parses "a..b" (inclusive), "x,y,z", or a mix such as "1..3,7".
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// Runs one command line; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clab::cli
