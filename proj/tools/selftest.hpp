#pragma once

namespace frtc_cli {

/// Runs the library's invariant suites at small sizes and prints one
/// PASS/FAIL line per property group. Returns true when every group passed.
bool run_selftest();

}  // namespace frtc_cli
