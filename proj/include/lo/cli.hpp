#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lo {

// Exit codes: 0 all checks passed, 1 assertion or precondition failure,
// 2 usage error, 3 resource guard tripped.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lo
