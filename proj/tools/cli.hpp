#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quickpie::cli {

/// Prefix of every diagnostic written to the error stream.
inline constexpr const char* kDiagnosticPrefix = "quickpie: error: ";

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`; failures print one line starting with kDiagnosticPrefix to
/// `err` and return nonzero (2 for usage errors, 1 otherwise).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quickpie::cli
