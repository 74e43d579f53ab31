#pragma once

#include <iosfwd>

namespace ffp::cli {

/// Exit codes: 0 success, 2 precondition error, 3 invariant violation, 64 usage.
inline constexpr int kOk = 0;
inline constexpr int kPrecondition = 2;
inline constexpr int kInvariant = 3;
inline constexpr int kUsage = 64;

/// Parses argv and runs one subcommand. Results go to `out` (or to files under
/// --out), diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffp::cli
