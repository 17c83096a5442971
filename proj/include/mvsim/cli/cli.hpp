#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mvsim {

// Exit statuses of dispatch().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // usage or configuration error
inline constexpr int kExitInternal = 2;  // storage fault or invariant violation

// Entry point of the mvsim command line. argv[0] is the program name.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Parses `key = value` lines; '#' starts a comment. Keys must be in `known`.
// Throws ConfigError naming the offending key or line.
std::map<std::string, std::string> parse_config_text(const std::string& text, const std::vector<std::string>& known);

}  // namespace mvsim
