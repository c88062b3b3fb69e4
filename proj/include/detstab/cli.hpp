#pragma once

#include <iosfwd>

namespace detstab {

/// Runs one of the subcommands profile | criterion | curve | sturm | evans | sweep.
/// Exit status: 0 success, 1 domain error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace detstab
