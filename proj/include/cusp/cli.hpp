#pragma once

namespace cusp::cli {

/// Entry point of the command line tool. Exit codes: 0 success, 1 numerical
/// failure, 2 configuration or usage error.
int run(int argc, const char* const* argv);

}  // namespace cusp::cli
