#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ck::tools {

[[nodiscard]] const std::vector<std::string>& verify_suites();

// Writes one JSON object per check and returns true iff every check passed.
// tol is the oracle integrator tolerance. Throws std::invalid_argument for an
// unknown suite.
bool run_verify(const std::string& suite, double tol, std::ostream& out);

}  // namespace ck::tools
