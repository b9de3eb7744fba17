#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qd1::cli {

/// Runs one command; args excludes the program name.
/// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qd1::cli
