#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nash::cli {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kTimeout = 3;

/// Runs one command.  `args` excludes the program name; input is read from
/// the named file or from `in` when no file (or "-") is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Makes SIGINT cancel a running solve instead of killing the process.
void install_interrupt_handler();

}  // namespace nash::cli
