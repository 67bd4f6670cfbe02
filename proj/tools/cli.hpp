#pragma once

#include <ostream>

namespace trnrp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Entry point behind the `trnrp` binary: gen, train, oracle, eval, run, inspect.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trnrp::cli
