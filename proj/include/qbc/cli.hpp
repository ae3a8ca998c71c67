#pragma once

#include <ostream>
#include <span>
#include <string>

namespace qbc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // failed check or invalid channel
  kExitParseError = 2,   // bad arguments or malformed channel file
  kExitResource = 3,     // dimension, Kraus-count, or blocklength cap
};

// Runs one command line (without the program name). Results go to `out`
// (or the --out file), diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qbc::cli
