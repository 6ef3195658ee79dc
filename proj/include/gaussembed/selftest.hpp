#pragma once

#include <iosfwd>

namespace gaussembed {

// Runs the library's property suites (closed-form vs generic curvature
// oracles, tensor symmetries, scaling covariance, Gauss solver consistency,
// derived-Gauss identities), one line per suite.  Returns true iff all pass.
bool run_selftest(std::ostream& out);

}  // namespace gaussembed
