#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gabor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one subcommand. Results go to --out (or `out` for "-"), diagnostics
/// and "-" manifests to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace gabor::cli
