#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace groupmms {

// Entry point shared by the binary and the tests. Returns 0 on success,
// 1 on a domain error (diagnostic on err), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groupmms
