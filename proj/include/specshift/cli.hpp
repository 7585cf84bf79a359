#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specshift/hermitian.hpp"

namespace specshift::cli {

enum ExitCode : int {
  ok = 0,
  parse_failure = 2,
  dimension_mismatch = 3,
  no_convergence = 4,
  check_failed = 5,
  cutoff_too_low = 6,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Matrix from a JSON file path or a model descriptor: "laplacian:n,bc",
/// "schrodinger:n,bc,file", "dirac:n", "gauge:n,file" (the gauged operator),
/// "random:n,seed".
HermitianOperator resolve_operator(const std::string& source);

}  // namespace specshift::cli
