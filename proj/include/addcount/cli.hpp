#pragma once

// Command-line front end. `run` is the whole program minus argv handling so
// tests can drive it in-process.
//
// Exit status: 0 success, 1 usage or guard error, 2 a verification failed.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace addcount {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

// "0,1,3", "16,0..12" or "-1..12": comma-separated residues and inclusive
// ranges x..y. Values are returned unreduced.
std::vector<std::int64_t> parse_set_literal(const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace addcount
