#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace credal::cli {

inline constexpr int kExitOk = 0;
/// A negative verdict under --strict, or failing corpus expectations.
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command. `args` excludes the program name. The RNG seed comes
/// from CREDAL_SEED (default 0).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace credal::cli
