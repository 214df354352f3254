#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sptk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kScoresHeader = "#sp-scores v1";

// Runs one command line. `args` excludes the program name. Reports go to
// `out`, diagnostics and logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace sptk::cli
