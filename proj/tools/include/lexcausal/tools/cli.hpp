#pragma once

#include <iosfwd>

namespace lexcausal::tools {

/// Exit codes: 0 success, 1 input or usage error, 2 numerical or internal failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lexcausal::tools
