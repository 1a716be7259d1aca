#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwh {

/// Runs one `pwh` command. Exit codes: 0 success, 1 domain error, 2 malformed
/// input or usage. `-` as a path means in/out.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pwh
