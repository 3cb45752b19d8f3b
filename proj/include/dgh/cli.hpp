#pragma once

#include <ostream>

namespace dgh::cli {

// Exit codes: 0 ok, 1 internal error or failed verification, 2 domain error,
// 64 usage error.
inline constexpr int kExitOk = 0, kExitInternal = 1, kExitDomain = 2, kExitUsage = 64;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgh::cli
