#pragma once

#include <ostream>

namespace conedec {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitParse = 2,
  kExitSingular = 3,
  kExitBudget = 4,
  kExitVerifyFailed = 5,
};

/// Entry point of the conedec tool: subcommands decompose, verify,
/// gen-random and bench. Documents go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conedec
