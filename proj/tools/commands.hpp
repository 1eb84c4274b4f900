#pragma once

#include <iosfwd>

namespace qes::cli {

/// Exit codes: 0 success, 1 usage or config error, 2 the model fails the
/// requested check (sector not invariant, ill-defined ground state,
/// infeasible shape, unmatched oracle levels, numerical failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
