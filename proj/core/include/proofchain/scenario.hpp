#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofchain/tcr.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

// One scripted protocol step: `tick | actor | action | key=value | ...`.
// Actions: genesis, put, submit, propose, challenge, vote, resolve, bond,
// deploy, approve, stake_branch, agent_step, set_hosted, debug_mint. The
// `signature=` argument, when present, must be the final field: its value
// runs to the end of the line, pipes included.
struct ScenarioEvent {
  Tick at = 0;
  AccountId actor; // "-" for system events
  std::string action;
  std::map<std::string, std::string> args;

  std::string canonical() const; // deterministic re-rendering; parses back
};

struct AgentDecl {
  enum class Kind { Human, AiTool };
  AccountId name;
  Kind kind = Kind::Human;
  std::vector<StatementId> solvable; // AiTool: statements it can close
  std::vector<StatementId> watch;    // AiTool: targets whose gaps it attacks
  std::vector<ScenarioEvent> directives; // Human: steps run one per agent_step

  std::string canonical() const;
};

// A parsed scenario file: optional `tcr` parameter line and `agent` /
// `directive` declarations, then events with non-decreasing ticks. Lines
// starting with '#' and blank lines are ignored.
struct Scenario {
  std::string name;
  std::optional<TcrParams> tcr;
  std::vector<AgentDecl> agents; // declaration order
  std::vector<ScenarioEvent> events;

  // Canonical declaration lines (tcr, agents, directives), used as the
  // event-log header so a log alone can rebuild the world.
  std::vector<std::string> declaration_lines() const;
};

Scenario parse_scenario_text(const std::string &text, const std::string &name);
Scenario load_scenario(const std::string &path); // ScenarioError on unreadable file

// Parses the canonical event rendering (used for scenario lines and log
// replay).
ScenarioEvent parse_event_line(const std::string &line);

// Argument helpers; missing/malformed arguments raise ScenarioError.
const std::string &require_arg(const ScenarioEvent &event, const std::string &key);
std::string arg_or(const ScenarioEvent &event, const std::string &key,
                   const std::string &fallback);
std::uint64_t parse_number(const std::string &text);
std::pair<std::uint64_t, std::uint64_t> parse_fraction(const std::string &text); // "1/2"
std::vector<std::string> split_list(const std::string &text);                    // csv

} // namespace proofchain
