// Command-line front end: train, eval, sweep, export and patterns.
#pragma once

#include <iosfwd>

namespace banditsweeper {

/// Runs one command. Returns the process exit status; messages go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace banditsweeper
