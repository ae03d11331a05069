#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trajeval::cli {

/// Entry point shared by the executable and the integration tests.
/// `args` excludes the program name. Returns the process exit code:
/// 0 success, 1 usage, 2 I/O or parse error, 3 association failure,
/// 4 degenerate geometry or insufficient data.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trajeval::cli
