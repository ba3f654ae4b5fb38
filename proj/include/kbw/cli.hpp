#pragma once

#include <ostream>

namespace kbw::cli {

// Exit codes: 0 ok, 1 mismatch (failed assertion, table diff, failed fixture), 2 usage or domain error, 3 capacity.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kbw::cli
