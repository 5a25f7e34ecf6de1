#pragma once
#include <iosfwd>

namespace torell {

// Runs the full verification suite, one PASS/FAIL line per criterion on
// `out`; timing details go to `log`. Returns true when everything passed.
bool run_acceptance(std::ostream& out, std::ostream& log);

} // namespace torell
