#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vsf::cli {

/// Exit codes of the vsf tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; args excludes the program name. Tables go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsf::cli
