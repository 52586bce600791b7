#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proofchain/content_store.hpp"
#include "proofchain/incentives.hpp"
#include "proofchain/ledger.hpp"
#include "proofchain/proof_dag.hpp"
#include "proofchain/registry.hpp"
#include "proofchain/scenario.hpp"
#include "proofchain/tcr.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

struct LogEntry {
  std::string event_line; // canonical event rendering
  std::string outcome;    // "ok: ..." or "error <Code>: ..."
  std::uint64_t fingerprint = 0;

  std::string canonical() const;
  static LogEntry parse(const std::string &line);
};

// Append-only run log. The declarations (tcr parameters, agents, directives)
// plus the entries are enough to rebuild the final state from scratch:
// replaying compares each recomputed outcome and state fingerprint against
// the recorded ones.
struct EventLog {
  std::vector<std::string> declarations;
  std::vector<LogEntry> entries;

  std::string serialize() const;
  static EventLog parse(const std::string &text);
};

struct AgentState {
  AgentDecl decl;
  std::vector<StatementId> attempts; // statements tried and failed, in order
  std::size_t next_directive = 0;
};

struct PayoutRecord {
  Tick at = 0;
  std::string mechanism;
  std::string kind; // fixed_prize / halving / tcr_resolve
  StatementId target;
  std::vector<ContentAddress> tree_key;
  std::vector<PayoutEntry> payouts;
};

std::uint64_t fnv1a(const std::string &text);

// The composed protocol state plus the single-threaded event loop that
// mutates it. Events are applied strictly in order; domain errors become
// failed outcomes in the log; token conservation is checked after every
// event and a violation aborts the run. Every run is a pure function of the
// scenario: identical scenarios give bit-identical logs and states.
class World {
public:
  World();
  explicit World(const Scenario &scenario); // declarations only, no events

  World(World &&) = default;
  World &operator=(World &&) = default;

  const LogEntry &apply(const ScenarioEvent &event);

  static std::pair<World, EventLog> run(const Scenario &scenario);
  // Rebuilds a world from the log alone; DivergenceDetected when any entry's
  // recomputed outcome or fingerprint differs from the recorded one.
  static World replay(const EventLog &log);

  // Canonical text rendering of the full state (everything except the log);
  // two worlds are structurally equal iff their dumps are byte-identical.
  std::string dump() const;
  std::uint64_t fingerprint() const;

  const Ledger &ledger() const { return *ledger_; }
  const ContentStore &store() const { return *store_; }
  const Registry &registry() const { return *registry_; }
  const ProofDag &dag() const { return *dag_; }
  const Tcr &tcr() const { return *tcr_; }
  const Incentives &incentives() const { return *incentives_; }
  const EventLog &log() const { return log_; }
  const std::vector<PayoutRecord> &payout_records() const { return payout_records_; }
  const std::vector<AgentState> &agents() const { return agents_; }
  const std::map<ContentAddress, std::string> &labels() const { return labels_; }
  const std::set<AccountId> &ai_accounts() const { return ai_accounts_; }
  Tick now() const { return now_; }

  // Scenario-local blob naming: a known name, or 64 hex chars taken verbatim.
  ContentAddress resolve_address(const std::string &name_or_hex) const;

private:
  std::string dispatch(const ScenarioEvent &event);
  std::string apply_genesis(const ScenarioEvent &event);
  std::string apply_put(const ScenarioEvent &event);
  std::string apply_submit(const ScenarioEvent &event);
  std::string apply_propose(const ScenarioEvent &event);
  std::string apply_challenge(const ScenarioEvent &event);
  std::string apply_vote(const ScenarioEvent &event);
  std::string apply_resolve(const ScenarioEvent &event);
  std::string apply_bond(const ScenarioEvent &event);
  std::string apply_deploy(const ScenarioEvent &event);
  std::string apply_approve(const ScenarioEvent &event);
  std::string apply_stake_branch(const ScenarioEvent &event);
  std::string apply_agent_step(const ScenarioEvent &event);
  std::string apply_set_hosted(const ScenarioEvent &event);
  std::string apply_debug_mint(const ScenarioEvent &event);

  std::string step_human(AgentState &agent);
  std::string step_ai(AgentState &agent);

  // The shared submit pipeline: append the record, then try to ingest its
  // blob (validation, licensing, duplicate advisory).
  std::string submit_and_ingest(Record record);
  // Registers proof trees on open halving series once their completing
  // record cleared curation.
  std::string auto_register_halvings();
  bool tree_eligible_for_payment(const ProofTree &tree) const;
  std::string describe_payouts(const std::vector<PayoutEntry> &entries) const;

  std::unique_ptr<Ledger> ledger_;
  std::unique_ptr<ContentStore> store_;
  std::unique_ptr<Registry> registry_;
  std::unique_ptr<ProofDag> dag_;
  std::unique_ptr<Tcr> tcr_;
  std::unique_ptr<Incentives> incentives_;
  TcrParams params_;
  std::map<std::string, ContentAddress> names_;
  std::map<ContentAddress, std::string> labels_;
  std::map<ContentAddress, std::string> record_of_; // first record per blob
  std::vector<AgentState> agents_;
  std::set<AccountId> ai_accounts_;
  std::vector<PayoutRecord> payout_records_;
  EventLog log_;
  Tick now_ = 0;
  bool genesis_done_ = false;
};

} // namespace proofchain
