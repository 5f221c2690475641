#pragma once

#include <iosfwd>

namespace villus::cli {

// Exit codes: 0 success, 1 processing failure, 2 bad arguments.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Entry point of the `villus` tool. Machine-readable JSON goes to `out`,
// human-readable logs and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace villus::cli
