#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowclass::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one command line (without the program name). The report goes to `out`,
/// messages to `err`. Returns 0 on success, 1 for usage errors, 2 for numerical
/// diagnostics (non-convergence, inconsistent invariants, unattainable exact mode).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowclass::cli
