#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcfiber {

/// Entry point shared by the binary and the tests.
/// Exit codes: 0 pass, 1 verification failure, 2 usage or malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gcfiber
