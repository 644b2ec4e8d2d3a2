#pragma once

namespace itsc {

/// Entry point of the itsc-sim command line tool.
/// Exit codes: 0 success, 1 usage error, 2 scenario/config error, 3 runtime error.
int run_cli(int argc, const char* const* argv);

}  // namespace itsc
