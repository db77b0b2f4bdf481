// Command-line front end. Exit codes: 0 success, 1 parse or semantic error,
// 2 resource cap exceeded.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permcc {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permcc
