#pragma once

#include <iosfwd>

namespace bmatch {

// Command-line front end: match, verify, bench, gen. Returns the process
// exit code: 0 success, 1 correctness/maximality failure, 2 usage or parse
// error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bmatch
