#pragma once

namespace projreg {

/// Entry point of the `projreg` binary. Exit codes: 0 success, 2 validation
/// or I/O failure, 3 numerical failure (rank collapse, lost injectivity).
int run_cli(int argc, const char* const* argv);

}  // namespace projreg
