#ifndef SFTLAB_TOOLS_COMMANDS_HPP_
#define SFTLAB_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "report.hpp"

namespace sftlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kContradiction = 1;
inline constexpr int kMalformed = 2;

/// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The embedded lemma suite. `passed` is false if any check failed.
Json selftest(std::uint64_t seed, std::size_t trials, std::size_t threads, bool& passed);

}  // namespace sftlab::cli

#endif  // SFTLAB_TOOLS_COMMANDS_HPP_
