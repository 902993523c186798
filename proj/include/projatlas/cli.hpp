// Command-line front end: subcommand dispatch over the analysis pipeline.
#pragma once

#include <ostream>

namespace projatlas {

/// Parses argv and runs one subcommand, writing results to `out` and
/// diagnostics to `err`.  Returns the process exit code: 0 on success, 1 on
/// input or usage errors (bad flags, unparsable systems, unreadable files),
/// 2 on analysis errors.  Identical argv and file contents produce identical
/// bytes.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace projatlas
