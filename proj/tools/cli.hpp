#pragma once

#include <iosfwd>

namespace inclab {

// Exit codes: 0 success, 1 usage error, 2 data error. Results go to out (or the --output
// file), diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace inclab
