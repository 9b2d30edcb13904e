#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inrs {

/// Fraction of in-box points with diagnostics above which the CLI exits with 2.
inline constexpr double kDiagnosticThreshold = 1e-3;

/// Command-line driver. Returns 0 on success, 1 on bad input, 2 when
/// consistency diagnostics exceed kDiagnosticThreshold.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace inrs
