#pragma once

// Command-line front end. `run` is the whole program minus process exit, so
// tests can drive every subcommand in-process.
//
//   bufshuf simulate      Monte Carlo Phi(t) against the model rate
//   bufshuf verify-rates  enumeration oracle against every closed form
//   bufshuf sweep         round counts over a parameter grid
//   bufshuf trace         every metric along a single trajectory
//
// Exit codes: 0 success, 1 strict-mode statistical failure (or an
// unmatched verify-rates instance), 2 configuration error, 3 oracle
// mismatch on an f = 0 instance.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bufshuf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStatistical = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitOracleMismatch = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat `key = value` document; '#' starts a comment. Throws ConfigError on
/// malformed lines, unknown keys, or duplicates. Known keys: n, k, s, f,
/// assignment, rounds, trials, seed.
std::map<std::string, std::string> parse_config_document(std::string_view text);

/// Splits a grid flag on commas, trimming blanks. An empty string is an
/// empty list.
std::vector<std::string> split_list(std::string_view text);

}  // namespace bufshuf::cli
