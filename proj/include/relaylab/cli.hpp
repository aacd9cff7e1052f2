#pragma once

namespace relaylab {

// Entry point of the relaylab command-line tool. Returns the process exit code:
// 0 success, 1 failed verification, 2 usage or invalid input, 3 infeasible
// search, 4 numeric convergence failure.
int run_cli(int argc, char** argv);

}  // namespace relaylab
