#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uwqkd::cli {

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;  // colour the "error:" prefix
};

/// Runs the command line `args` (args[0] is the program name).
/// Returns 0 on success, 1 on runtime errors and 2 on usage errors.
int run(const std::vector<std::string>& args, const Streams& io);

}  // namespace uwqkd::cli
