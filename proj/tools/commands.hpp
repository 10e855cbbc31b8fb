#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeromode::cli {

/// Parses argv, dispatches the subcommand and returns the process exit
/// status: 0 ok, 2 usage or validation error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeromode::cli
