#pragma once

#include <iostream>

namespace rwrc {

/// Entry point of the `rwrc` tool. Returns 0 on success, 1 on usage or
/// validation errors and 2 on numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

const char* version_string();

}  // namespace rwrc
