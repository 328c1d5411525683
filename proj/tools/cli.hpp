#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flagkneser::cli {

/// Runs the command line. Returns 0 when every check passed, 1 when a check
/// failed and 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagkneser::cli
