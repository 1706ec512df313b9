#pragma once

#include <iosfwd>

namespace geocast {

// Exit codes: 0 success, 1 a check was violated, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geocast
