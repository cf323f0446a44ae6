#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bmforge {

/// Exit codes of the command line front-end.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitViolation = 2 };

/// Runs `bmforge <subcommand> ...`. CSV tables go to --out (default: out),
/// JSON summaries to --summary (default: err); certify writes its JSON
/// report to --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmforge
