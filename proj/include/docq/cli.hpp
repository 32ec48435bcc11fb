#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace docq {

/// Entry point shared by the binary and the CLI tests. `args` excludes the
/// program name. Exit codes: 0 success, 1 data error, 2 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace docq
