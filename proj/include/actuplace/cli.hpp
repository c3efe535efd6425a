#pragma once

#include <iosfwd>

namespace actuplace {

/// Dispatches one CLI invocation.  Report JSON goes to `out`, human summary
/// to `err`.  Exit codes: 0 success, 1 infeasible problem, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace actuplace
