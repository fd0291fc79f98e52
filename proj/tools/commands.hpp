#pragma once

namespace subgrad::cli {

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 failed certificate, 2 usage/parse error, 3 violated
/// mathematical precondition.
int run_main(int argc, const char* const* argv);

}  // namespace subgrad::cli
