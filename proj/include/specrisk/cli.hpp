#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace specrisk {

/// Runs the command line (without the program name). Returns the process
/// exit status; diagnostics go to `err`, stdout payloads to `out`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace specrisk
