#pragma once

#include "lindgal/config.hpp"

namespace lindgal {

// Executes a parsed run: creates the output directory, writes the manifest
// first (so partial runs are detectable), then the per-command CSV reports.
// Returns a process exit status; failures leave an error_report.txt behind.
int execute(const RunConfig& cfg);

// The `check` command: runs the cross-module invariant suite, printing one
// pass/fail line per invariant. Returns the number of failures.
int run_invariant_checks();

}  // namespace lindgal
