#pragma once

#include <iosfwd>

namespace ioncav::cli {

/// Parses argv and runs one subcommand. Returns the process exit code;
/// usage errors map to 2.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ioncav::cli
