#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcompound::cli {

/// Runs one kcomp invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success or Certified, 2 Refuted or Inconclusive, 1 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcompound::cli
