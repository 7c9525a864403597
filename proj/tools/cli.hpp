#pragma once

// Command-line front end: every operation as a subcommand with JSON input
// (--in) and JSON output (--out or standard output, sorted keys).
//
// Exit codes: 0 success; 1 when a mathematical check fails (a report flag is
// false, or the input violates a hypothesis such as closure or linearity);
// 2 on invalid input, capacity or search limits. Failures carry an "error"
// object {"code", "message"}.

#include <iosfwd>

namespace drinlev::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drinlev::cli
