#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csl {

/// Command-line front end. Exit codes: 0 success / affirmative verdict /
/// zero distance, 1 negative verdict or nonzero distance, 2 usage or parse
/// error, 3 internal invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csl
