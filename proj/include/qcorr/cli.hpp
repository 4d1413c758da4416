#pragma once

#include <iosfwd>

namespace qcorr::cli {

/// Exit codes of the qcorr command line.
enum ExitCode : int { kOk = 0, kParseError = 1, kDomainError = 2 };

/// Runs `qcorr <command> ...`. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
