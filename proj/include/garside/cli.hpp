#pragma once

// The garside command line, callable in process.  Output is deterministic;
// timing goes to the error stream only with --timing.

#include <ostream>
#include <string>
#include <vector>

namespace garside::cli {

// Exit codes.
inline constexpr int ok               = 0;
inline constexpr int negative_verdict = 1;  // axiom failure, not conjugating, ...
inline constexpr int bad_input        = 2;  // usage, parse or germ validation error
inline constexpr int computation      = 3;  // the computation itself failed

// args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace garside::cli
