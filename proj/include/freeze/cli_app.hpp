#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freeze {

/// Runs the command-line tool in-process. Exit codes: 0 success/frozen,
/// 1 not frozen, 2 parse or validation error, 3 node budget exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace freeze
