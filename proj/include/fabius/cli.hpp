#pragma once

#include <iosfwd>
#include <string_view>

namespace fabius::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNeedsTolerance = 3,
};

/// Entry point of the `fabius` tool. Data goes to `out` (or to --out FILE),
/// diagnostics to `err`. Returns the process exit status.
///
///   fabius seq {c,d,F,G,R} --max N
///   fabius eval --x X [--eps E] [--digits K]
///   fabius table --level N [--max-level M]
///   fabius verify --suite NAME --max N [--timing]
///
/// Every subcommand takes --format {text,csv,json}, --out FILE and --jobs J;
/// --config FILE reads the same options from an INI/TOML file, with flags on
/// the command line taking precedence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fabius::cli
