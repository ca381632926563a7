#pragma once

namespace risnoma {

// Compact invariant/oracle battery behind `risnoma validate`. Prints one
// line per check; returns true when everything passes.
bool run_validate_suite(int threads);

} // namespace risnoma
