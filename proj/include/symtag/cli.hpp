#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace symtag::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. args[0] is the program name. Data goes to `out`,
/// diagnostics to `err`; a path of "-" means stdin/stdout.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace symtag::cli
