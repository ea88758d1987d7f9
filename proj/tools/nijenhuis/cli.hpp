#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nijenhuis::cli {

/// Exit codes: 0 pass, 1 a requested check failed, 2 usage or runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nijenhuis::cli
