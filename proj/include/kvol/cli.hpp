#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kvol {

/// Runs the command-line front end. Exit codes: 0 success/verified,
/// 1 verification failure, 2 usage or parse error, 3 domain violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace kvol
