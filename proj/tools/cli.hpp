#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oseval::cli {

/// Exit statuses of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kRefused = 1;  // invalid input or undefined metric
inline constexpr int kUsage = 2;

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oseval::cli
