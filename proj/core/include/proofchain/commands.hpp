#pragma once

#include <optional>
#include <string>

#include "proofchain/types.hpp"

namespace proofchain {

// Exit codes shared by the CLI subcommands: 0 success, 1 scenario/input
// error, 2 invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioError = 1;
inline constexpr int kExitInvariantViolation = 2;

// Runs a scenario, writes the run report to `report_path`, and, when
// `dot_dir` is given, one proof-graph snapshot per event tick
// (tick_<N>.dot). Diagnostics go to stderr.
int cmd_run(const std::string &scenario_path, const std::string &report_path,
            const std::optional<std::string> &dot_dir);

// Writes the proof-graph DOT snapshot as of the end of `tick` (events with a
// later tick are ignored; ticks beyond the final event clamp to it).
int cmd_dot(const std::string &scenario_path, Tick tick, const std::string &out_path);

// Re-runs every *.scn fixture in the directory and byte-compares the report
// against <stem>.report.txt and each committed <stem>.tick<N>.dot snapshot.
// Prints one line per checked file; exit 0 iff everything matches.
int cmd_verify(const std::string &fixture_dir);

} // namespace proofchain
