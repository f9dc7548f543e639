#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace elcomm::cli {

enum Exit : int {
  Ok = 0,
  CheckFailed = 1,
  Usage = 2,
  Unsupported = 3,
  CapReached = 4,
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elcomm::cli
