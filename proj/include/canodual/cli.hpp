#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace canodual::cli {

/// Command dispatch shared by the binary and the tests; returns the process
/// exit code. Subcommands: solve, cases, curves, verify.
///
/// Exit codes: 0 success, 1 malformed flags or I/O failure, 2 regime error,
/// 3 unclassified landscape, 4 case-table mismatch, 5 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv[0] is skipped; writes to std::cout / std::cerr.
int run(int argc, const char* const* argv);

}  // namespace canodual::cli
