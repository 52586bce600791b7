#include "proofchain/world.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "proofchain/dot_export.hpp"

namespace proofchain {

namespace {

constexpr const char *kLogHeader = "# proofchain event log v1";

std::string join(const std::vector<std::string> &items, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i)
    out += (i ? sep : "") + items[i];
  return out;
}

} // namespace

std::uint64_t fnv1a(const std::string &text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string LogEntry::canonical() const {
  return fmt::format("{} @@ outcome={} @@ fp={:016x}", event_line, outcome, fingerprint);
}

LogEntry LogEntry::parse(const std::string &line) {
  std::size_t fp_pos = line.rfind(" @@ fp=");
  if (fp_pos == std::string::npos)
    throw ProtocolError(Errc::ScenarioError, fmt::format("log entry without fingerprint: '{}'", line));
  std::size_t outcome_pos = line.rfind(" @@ outcome=", fp_pos);
  if (outcome_pos == std::string::npos)
    throw ProtocolError(Errc::ScenarioError, fmt::format("log entry without outcome: '{}'", line));

  LogEntry entry;
  entry.event_line = line.substr(0, outcome_pos);
  entry.outcome = line.substr(outcome_pos + 12, fp_pos - (outcome_pos + 12));
  try {
    entry.fingerprint = std::stoull(line.substr(fp_pos + 7), nullptr, 16);
  } catch (const std::exception &) {
    throw ProtocolError(Errc::ScenarioError, fmt::format("bad fingerprint in '{}'", line));
  }
  return entry;
}

std::string EventLog::serialize() const {
  std::string out = kLogHeader;
  out.push_back('\n');
  for (const auto &decl : declarations)
    out += fmt::format("decl | {}\n", decl);
  for (const auto &entry : entries)
    out += entry.canonical() + "\n";
  return out;
}

EventLog EventLog::parse(const std::string &text) {
  EventLog log;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    if (line.rfind("decl | ", 0) == 0)
      log.declarations.push_back(line.substr(7));
    else
      log.entries.push_back(LogEntry::parse(line));
  }
  return log;
}

World::World() : World(Scenario{}) {}

World::World(const Scenario &scenario)
    : ledger_(std::make_unique<Ledger>()),
      store_(std::make_unique<ContentStore>()),
      registry_(std::make_unique<Registry>()),
      dag_(std::make_unique<ProofDag>()),
      params_(scenario.tcr.value_or(TcrParams{})) {
  tcr_ = std::make_unique<Tcr>(params_, *ledger_, *registry_);
  incentives_ = std::make_unique<Incentives>(*ledger_, *dag_);
  for (const auto &decl : scenario.agents) {
    agents_.push_back(AgentState{decl, {}, 0});
    if (decl.kind == AgentDecl::Kind::AiTool)
      ai_accounts_.insert(decl.name);
  }
  log_.declarations = scenario.declaration_lines();
}

ContentAddress World::resolve_address(const std::string &name_or_hex) const {
  auto it = names_.find(name_or_hex);
  if (it != names_.end())
    return it->second;
  ContentAddress literal{name_or_hex};
  if (literal.valid())
    return literal;
  throw ProtocolError(Errc::ScenarioError,
                      fmt::format("'{}' names no stored blob", name_or_hex));
}

const LogEntry &World::apply(const ScenarioEvent &event) {
  if (event.at < now_)
    throw ProtocolError(Errc::ScenarioError,
                        fmt::format("event at tick {} after tick {}", event.at, now_));
  now_ = event.at;

  std::string outcome;
  try {
    std::string detail = dispatch(event);
    std::string triggered = auto_register_halvings();
    outcome = "ok: " + detail + triggered;
  } catch (const ProtocolError &error) {
    outcome = fmt::format("error {}", error.what());
  }

  if (!ledger_->conserved())
    throw InvariantViolation(
        fmt::format("token conservation broken at tick {}: balances {} + escrows {} != supply {}",
                    now_, [&] {
                      TokenAmount sum = 0;
                      for (const auto &[account, amount] : ledger_->balances())
                        sum += amount;
                      return sum;
                    }(),
                    ledger_->escrowed_total(), ledger_->total_supply()));

  log_.entries.push_back(LogEntry{event.canonical(), std::move(outcome), 0});
  log_.entries.back().fingerprint = fingerprint();
  return log_.entries.back();
}

std::string World::dispatch(const ScenarioEvent &event) {
  if (event.action == "genesis")
    return apply_genesis(event);
  if (event.action == "put")
    return apply_put(event);
  if (event.action == "submit")
    return apply_submit(event);
  if (event.action == "propose")
    return apply_propose(event);
  if (event.action == "challenge")
    return apply_challenge(event);
  if (event.action == "vote")
    return apply_vote(event);
  if (event.action == "resolve")
    return apply_resolve(event);
  if (event.action == "bond")
    return apply_bond(event);
  if (event.action == "deploy")
    return apply_deploy(event);
  if (event.action == "approve")
    return apply_approve(event);
  if (event.action == "stake_branch")
    return apply_stake_branch(event);
  if (event.action == "agent_step")
    return apply_agent_step(event);
  if (event.action == "set_hosted")
    return apply_set_hosted(event);
  if (event.action == "debug_mint")
    return apply_debug_mint(event);
  throw ProtocolError(Errc::ScenarioError, fmt::format("unknown action '{}'", event.action));
}

std::string World::apply_genesis(const ScenarioEvent &event) {
  if (genesis_done_)
    throw ProtocolError(Errc::ScenarioError, "genesis already ran");
  std::vector<std::pair<AccountId, TokenAmount>> allocations;
  for (const auto &item : split_list(arg_or(event, "alloc", ""))) {
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ProtocolError(Errc::ScenarioError, fmt::format("bad allocation '{}'", item));
    allocations.emplace_back(item.substr(0, colon), parse_number(item.substr(colon + 1)));
  }
  *ledger_ = Ledger::genesis(allocations);
  genesis_done_ = true;
  return fmt::format("genesis of {} accounts, supply {}", allocations.size(),
                     ledger_->total_supply());
}

std::string World::apply_put(const ScenarioEvent &event) {
  const std::string &name = require_arg(event, "name");
  ContributionDoc doc;
  doc.target = require_arg(event, "target");
  doc.kind = parse_contribution_kind(require_arg(event, "kind"));
  for (const auto &premise : split_list(arg_or(event, "premises", "")))
    doc.premises.push_back(premise);
  doc.signature = arg_or(event, "signature", "");
  for (const auto &import : split_list(arg_or(event, "imports", "")))
    doc.imports.push_back(resolve_address(import));

  ContentAddress address = store_->put(doc.render());
  auto existing = names_.find(name);
  if (existing != names_.end() && existing->second != address)
    throw ProtocolError(Errc::ScenarioError,
                        fmt::format("blob name '{}' already bound to different content", name));
  names_.emplace(name, address);
  labels_.emplace(address, name);
  return fmt::format("stored {} at {}", name, address.short_id());
}

std::string World::apply_submit(const ScenarioEvent &event) {
  Record record;
  record.record_id = require_arg(event, "record");
  record.author = event.actor;
  record.file = resolve_address(require_arg(event, "file"));
  record.coq_ver = arg_or(event, "coq", "8.12");
  record.filetype = parse_filetype(require_arg(event, "filetype"));
  record.submitted_at = now_;

  std::string imports = arg_or(event, "imports", "");
  if (!imports.empty()) {
    for (const auto &import : split_list(imports))
      record.imports.push_back(resolve_address(import));
  } else if (store_->contains(record.file)) {
    // default to the blob's own import list
    try {
      record.imports = parse_contribution(store_->get(record.file)).imports;
    } catch (const ProtocolError &) {
    }
  }

  std::string rights = arg_or(event, "rights", "free");
  if (rights == "free") {
    record.right_to_use = {RightToUse::Kind::FreeToUse, 0, ""};
  } else if (rights == "restricted") {
    record.right_to_use = {RightToUse::Kind::RestrictedToUse, 0, ""};
  } else if (rights.rfind("pay:", 0) == 0) {
    std::size_t second = rights.find(':', 4);
    if (second == std::string::npos)
      throw ProtocolError(Errc::ScenarioError, fmt::format("bad rights '{}'", rights));
    record.right_to_use = {RightToUse::Kind::PayToUse, parse_number(rights.substr(4, second - 4)),
                           rights.substr(second + 1)};
  } else {
    throw ProtocolError(Errc::ScenarioError, fmt::format("bad rights '{}'", rights));
  }

  return submit_and_ingest(std::move(record));
}

std::string World::submit_and_ingest(Record record) {
  const std::string &record_id = registry_->submit(record);
  const Record &stored = registry_->by_id(record_id);
  std::string outcome = fmt::format("record {} submitted", record_id);

  ContributionBlob blob;
  try {
    blob = store_->get(stored.file);
  } catch (const ProtocolError &) {
    return outcome + "; contribution unavailable, not ingested";
  }

  ContributionDoc doc;
  try {
    doc = parse_contribution(blob);
  } catch (const ProtocolError &error) {
    return outcome + fmt::format("; blob does not parse ({}), not ingested", error.what());
  }

  Validation validation = dag_->validate(stored, blob, *store_);
  if (!validation.ok)
    return outcome + "; " + validation.describe() + ", not ingested";

  // Licensing gate: restricted imports deny outright; pay-to-use imports are
  // charged once per importer. All-or-nothing: fees are only charged after a
  // dry run of the whole list shows every one of them is payable.
  std::vector<std::pair<ContentAddress, RightToUse>> charges;
  for (const auto &import : doc.imports) {
    const Record *licensed = registry_->first_for_file(import);
    if (!licensed)
      continue; // unrecorded content defaults to free use
    const RightToUse &rights = licensed->right_to_use;
    if (rights.kind == RightToUse::Kind::RestrictedToUse)
      return outcome + fmt::format("; import {} is restricted, not ingested",
                                   labels_.count(import) ? labels_.at(import) : import.short_id());
    if (rights.kind == RightToUse::Kind::PayToUse &&
        !incentives_->license_paid(stored.author, import))
      charges.emplace_back(import, rights);
  }
  if (!charges.empty()) {
    bool affordable = ledger_->has_account(stored.author);
    TokenAmount remaining = affordable ? ledger_->balance(stored.author) : 0;
    for (const auto &[import, rights] : charges) {
      if (remaining < rights.fee) {
        affordable = false;
        break;
      }
      if (rights.beneficiary != stored.author)
        remaining -= rights.fee; // a fee to oneself needs the balance but keeps it
    }
    if (!affordable)
      return outcome + "; license fees unpaid (denied), not ingested";
  }
  for (const auto &[import, rights] : charges) {
    LicenseDecision decision =
        incentives_->check_and_charge_license(stored.author, import, rights, now_);
    outcome += fmt::format("; license {} for {}", to_string(decision),
                           labels_.count(import) ? labels_.at(import) : import.short_id());
  }

  if (!doc.signature.empty()) {
    auto duplicate = dag_->detect_duplicate(doc.signature);
    if (duplicate && *duplicate != doc.target)
      outcome += fmt::format("; duplicate of statement '{}' flagged", *duplicate);
  }

  bool fresh = dag_->ingest(stored, blob, *store_);
  record_of_.emplace(stored.file, record_id);
  outcome += fresh ? "; ingested" : "; already ingested";
  return outcome;
}

std::string World::apply_propose(const ScenarioEvent &event) {
  const TcrListing &listing = tcr_->propose(require_arg(event, "record"), event.actor, now_);
  return fmt::format("listing {} pending until tick {}", listing.record_id,
                     listing.delay_deadline);
}

std::string World::apply_challenge(const ScenarioEvent &event) {
  const TcrListing &listing = tcr_->challenge(require_arg(event, "record"), event.actor, now_);
  return fmt::format("listing {} challenged, vote open until tick {}", listing.record_id,
                     listing.challenge->vote_deadline);
}

std::string World::apply_vote(const ScenarioEvent &event) {
  const std::string &record_id = require_arg(event, "record");
  const std::string &choice_text = require_arg(event, "choice");
  VoteChoice choice;
  if (choice_text == "include")
    choice = VoteChoice::Include;
  else if (choice_text == "exclude")
    choice = VoteChoice::Exclude;
  else
    throw ProtocolError(Errc::ScenarioError, fmt::format("bad vote choice '{}'", choice_text));
  tcr_->vote(record_id, event.actor, choice, now_);
  const ChallengeRound &round = *tcr_->listing(record_id).challenge;
  return fmt::format("vote {} recorded on {} ({} include / {} exclude)", choice_text, record_id,
                     round.count(VoteChoice::Include), round.count(VoteChoice::Exclude));
}

std::string World::apply_resolve(const ScenarioEvent &event) {
  const std::string &record_id = require_arg(event, "record");
  ResolveOutcome outcome = tcr_->resolve(record_id, now_);

  PayoutRecord record;
  record.at = now_;
  record.mechanism = fmt::format("tcr:{}", record_id);
  record.kind = "tcr_resolve";
  for (const auto &payout : outcome.payouts)
    record.payouts.push_back({payout.account, payout.amount, payout.reason});
  payout_records_.push_back(std::move(record));

  std::string detail = fmt::format("listing {} {}", record_id, to_string(outcome.state));
  if (outcome.state == ListingState::Listed)
    detail += fmt::format(" weight={}", tcr_->listing(record_id).weight);
  detail += describe_payouts(payout_records_.back().payouts);
  return detail;
}

std::string World::apply_bond(const ScenarioEvent &event) {
  TokenAmount amount = parse_number(require_arg(event, "amount"));
  tcr_->bond(event.actor, amount);
  return fmt::format("{} bonded {}", event.actor, amount);
}

std::string World::apply_deploy(const ScenarioEvent &event) {
  const std::string &id = require_arg(event, "id");
  const std::string &kind = require_arg(event, "kind");
  AllocationPolicy policy = parse_allocation_policy(arg_or(event, "policy", "shapley"));
  const std::string &target = require_arg(event, "target");

  if (kind == "fixed_prize") {
    TokenAmount prize = parse_number(require_arg(event, "prize"));
    std::vector<AccountId> signers = split_list(require_arg(event, "signers"));
    std::size_t threshold = parse_number(arg_or(event, "threshold", "1"));
    incentives_->deploy_fixed_prize(id, event.actor, target, prize, signers, threshold, policy);
    return fmt::format("fixed prize {} of {} on {} ({} signers, threshold {})", id, prize, target,
                       signers.size(), threshold);
  }
  if (kind == "halving") {
    TokenAmount base = parse_number(require_arg(event, "base"));
    incentives_->deploy_halving(id, event.actor, target, base, policy);
    return fmt::format("halving series {} on {} with base {} (escrowed {})", id, target, base,
                       2 * base);
  }
  throw ProtocolError(Errc::ScenarioError, fmt::format("unknown mechanism kind '{}'", kind));
}

std::string World::apply_approve(const ScenarioEvent &event) {
  const std::string &id = require_arg(event, "id");
  const FixedPrize &contract = incentives_->fixed_prize(id);
  std::vector<ProofTree> trees = dag_->proof_trees(contract.target);
  std::size_t index = parse_number(arg_or(event, "tree", "0"));
  if (index >= trees.size())
    throw ProtocolError(Errc::TreeDoesNotProveTarget,
                        fmt::format("'{}' has {} proof trees, none at index {}", contract.target,
                                    trees.size(), index));

  AwardResult result = incentives_->approve_and_award(id, event.actor, trees[index]);
  if (!result.paid)
    return fmt::format("approval by {} recorded on {} ({} of {} needed)", event.actor, id,
                       contract.approvals.count(trees[index].key())
                           ? contract.approvals.at(trees[index].key()).size()
                           : 0,
                       contract.threshold);

  PayoutRecord record{now_, id, "fixed_prize", contract.target, trees[index].key(),
                      result.payouts};
  payout_records_.push_back(std::move(record));
  return fmt::format("prize {} paid{}", id, describe_payouts(result.payouts));
}

std::string World::apply_stake_branch(const ScenarioEvent &event) {
  ContentAddress contribution = resolve_address(require_arg(event, "contribution"));
  TokenAmount amount = parse_number(require_arg(event, "amount"));
  auto [num, denom] = parse_fraction(arg_or(event, "rho", "1/4"));
  incentives_->stake_branch(event.actor, contribution, amount, num, denom);
  return fmt::format("{} staked {} on {}", event.actor, amount,
                     labels_.count(contribution) ? labels_.at(contribution)
                                                 : contribution.short_id());
}

std::string World::apply_agent_step(const ScenarioEvent &event) {
  for (auto &agent : agents_)
    if (agent.decl.name == event.actor)
      return agent.decl.kind == AgentDecl::Kind::Human ? step_human(agent) : step_ai(agent);
  throw ProtocolError(Errc::ScenarioError, fmt::format("no agent '{}'", event.actor));
}

std::string World::apply_set_hosted(const ScenarioEvent &event) {
  ContentAddress address = resolve_address(require_arg(event, "name"));
  const std::string &hosted = require_arg(event, "hosted");
  if (hosted != "true" && hosted != "false")
    throw ProtocolError(Errc::ScenarioError, fmt::format("bad hosted flag '{}'", hosted));
  store_->set_hosted(address, hosted == "true");
  return fmt::format("{} is now {}", require_arg(event, "name"),
                     hosted == "true" ? "hosted" : "unhosted");
}

std::string World::apply_debug_mint(const ScenarioEvent &event) {
  // Deliberately skips supply accounting; the conservation check right after
  // this event fires.
  ledger_->unchecked_credit(require_arg(event, "account"),
                            parse_number(require_arg(event, "amount")));
  return "minted out of thin air";
}

std::string World::step_human(AgentState &agent) {
  if (agent.next_directive >= agent.decl.directives.size())
    return fmt::format("agent {} has no directives left", agent.decl.name);
  ScenarioEvent directive = agent.decl.directives[agent.next_directive++];
  directive.at = now_;
  directive.actor = agent.decl.name;
  try {
    return fmt::format("directive {}: {}", directive.action, dispatch(directive));
  } catch (const ProtocolError &error) {
    return fmt::format("directive {} failed: {}", directive.action, error.what());
  }
}

std::string World::step_ai(AgentState &agent) {
  std::vector<std::string> notes;
  for (const auto &target : agent.decl.watch) {
    if (!dag_->has_statement(target)) {
      notes.push_back(fmt::format("watch target {} unknown", target));
      continue;
    }
    // Snapshot the gaps first; the tool attacks every open gap it sees.
    std::vector<StatementId> frontier = dag_->gap_frontier(target);
    if (frontier.empty()) {
      notes.push_back(fmt::format("{} has no gaps", target));
      continue;
    }
    for (const auto &statement : frontier) {
      bool solvable = std::find(agent.decl.solvable.begin(), agent.decl.solvable.end(),
                                statement) != agent.decl.solvable.end();
      if (!solvable) {
        agent.attempts.push_back(statement);
        notes.push_back(fmt::format("fail {}", statement));
        continue;
      }
      std::string blob_name = fmt::format("ai_{}_{}", agent.decl.name, statement);
      if (names_.count(blob_name)) {
        notes.push_back(fmt::format("{} already emitted", blob_name));
        continue;
      }
      const ContentAddress *origin = dag_->introduced_by(statement);
      ContributionDoc doc;
      doc.target = statement;
      doc.kind = ContributionKind::Complete;
      if (origin)
        doc.imports.push_back(*origin);
      ContentAddress address = store_->put(doc.render());
      names_.emplace(blob_name, address);
      labels_.emplace(address, blob_name);

      Record record;
      record.record_id = blob_name + "Cont";
      record.author = agent.decl.name;
      record.file = address;
      record.coq_ver = "8.12";
      record.filetype = Filetype::CompletedProof;
      record.imports = doc.imports;
      record.submitted_at = now_;
      try {
        std::string submitted = submit_and_ingest(std::move(record));
        notes.push_back(fmt::format("closed {} ({})", statement, submitted));
      } catch (const ProtocolError &error) {
        notes.push_back(fmt::format("closing {} failed: {}", statement, error.what()));
        continue;
      }
      try {
        tcr_->propose(blob_name + "Cont", agent.decl.name, now_);
        notes.push_back(fmt::format("proposed {}Cont", blob_name));
      } catch (const ProtocolError &error) {
        notes.push_back(fmt::format("propose failed: {}", error.what()));
      }
    }
  }
  if (notes.empty())
    notes.push_back("nothing to do");
  return fmt::format("agent {}: {}", agent.decl.name, join(notes, "; "));
}

bool World::tree_eligible_for_payment(const ProofTree &tree) const {
  // The completing contribution (the newest justification) must have cleared
  // curation: Listed, or Pending with the delay period over.
  const Justification *newest = nullptr;
  for (const auto &[statement, address] : tree.choices) {
    const Justification &just = dag_->justification(address);
    if (!newest || std::tie(just.ingested_at, just.seq) >
                       std::tie(newest->ingested_at, newest->seq))
      newest = &just;
  }
  if (!newest)
    return false;
  auto record_it = record_of_.find(newest->contribution);
  if (record_it == record_of_.end() || !tcr_->has_listing(record_it->second))
    return false;
  const TcrListing &listing = tcr_->listing(record_it->second);
  if (listing.state == ListingState::Listed)
    return true;
  return listing.state == ListingState::Pending && now_ >= listing.delay_deadline;
}

std::string World::auto_register_halvings() {
  std::string out;
  for (const auto &id : incentives_->deploy_order()) {
    if (!incentives_->halvings().count(id))
      continue;
    while (true) {
      const HalvingSeries &series = incentives_->halving(id);
      if (series.closed)
        break;
      bool registered_one = false;
      for (const auto &tree : dag_->proof_trees(series.target)) {
        if (series.registered.count(tree.key()) || !tree_eligible_for_payment(tree))
          continue;
        TokenAmount payment = series.next_payment();
        AwardResult result = incentives_->register_halving(id, tree);
        payout_records_.push_back(
            PayoutRecord{now_, id, "halving", series.target, tree.key(), result.payouts});
        out += fmt::format("; halving {} paid {} for proof #{}{}", id, payment,
                           series.proofs_paid, describe_payouts(result.payouts));
        registered_one = true;
        break; // re-enumerate: the series may have advanced or closed
      }
      if (!registered_one)
        break;
    }
  }
  return out;
}

std::string World::describe_payouts(const std::vector<PayoutEntry> &entries) const {
  if (entries.empty())
    return "";
  std::vector<std::string> parts;
  for (const auto &entry : entries)
    parts.push_back(fmt::format("{}+{}[{}]", entry.account, entry.amount, entry.reason));
  return fmt::format(" payouts({})", join(parts, " "));
}

std::pair<World, EventLog> World::run(const Scenario &scenario) {
  World world(scenario);
  for (const auto &event : scenario.events)
    world.apply(event);
  EventLog log = world.log_;
  return {std::move(world), std::move(log)};
}

World World::replay(const EventLog &log) {
  std::string header;
  for (const auto &decl : log.declarations)
    header += decl + "\n";
  Scenario scenario = parse_scenario_text(header, "replay");

  World world(scenario);
  for (std::size_t i = 0; i < log.entries.size(); ++i) {
    const LogEntry &expected = log.entries[i];
    const LogEntry &applied = world.apply(parse_event_line(expected.event_line));
    if (applied.outcome != expected.outcome)
      throw ProtocolError(Errc::DivergenceDetected,
                          fmt::format("entry {}: outcome '{}' recorded but '{}' observed", i,
                                      expected.outcome, applied.outcome));
    if (applied.fingerprint != expected.fingerprint)
      throw ProtocolError(Errc::DivergenceDetected,
                          fmt::format("entry {}: state fingerprint diverged", i));
  }
  return world;
}

std::string World::dump() const {
  std::string out = fmt::format("== world tick={} ==\n", now_);

  out += fmt::format("[ledger] supply={} escrowed={}\n", ledger_->total_supply(),
                     ledger_->escrowed_total());
  for (const auto &[account, amount] : ledger_->balances())
    out += fmt::format("balance {} {}\n", account, amount);
  for (const auto &[id, escrow] : ledger_->escrows())
    out += fmt::format("escrow {} holder={} amount={} purpose={}\n", id, escrow.holder,
                       escrow.amount, escrow.purpose);

  out += fmt::format("[store] blobs={}\n", store_->size());
  for (const auto &[address, entry] : store_->entries())
    out += fmt::format("blob {} name={} hosted={} bytes={}\n", address.hex,
                       labels_.count(address) ? labels_.at(address) : "-", entry.hosted ? 1 : 0,
                       entry.bytes.size());

  out += fmt::format("[registry] records={}\n", registry_->size());
  for (const Record *record : registry_->list())
    out += fmt::format("record {} author={} file={} type={} coq={} rights={} at={} imports={}\n",
                       record->record_id, record->author, record->file.short_id(),
                       to_string(record->filetype), record->coq_ver,
                       record->right_to_use.describe(), record->submitted_at,
                       record->imports.size());

  out += "[dag]\n";
  for (const auto &[statement, status] : dag_->statements())
    out += fmt::format("stmt {} {} introduced={}\n", statement,
                       status == StatementStatus::Proven ? "proven" : "open",
                       dag_->introduced_by(statement) ? dag_->introduced_by(statement)->short_id()
                                                      : "-");
  for (const auto &[address, just] : dag_->justifications()) {
    std::vector<std::string> premises(just.premises.begin(), just.premises.end());
    out += fmt::format("just {} target={} premises={} author={} at={} seq={}\n",
                       address.short_id(), just.target, join(premises, ","), just.author,
                       just.ingested_at, just.seq);
  }
  for (const auto &[canon, statement] : dag_->signature_index())
    out += fmt::format("sig {} -> {}\n", fnv1a(canon), statement);

  out += "[tcr]\n";
  for (const auto &[prover, escrow] : tcr_->bonds())
    out += fmt::format("bonded {} escrow={}\n", prover, escrow);
  for (const auto &[record_id, listing] : tcr_->listings()) {
    out += fmt::format("listing {} state={} proposer={} weight={} delay_deadline={}\n", record_id,
                       to_string(listing.state), listing.proposer, listing.weight,
                       listing.delay_deadline);
    if (listing.challenge) {
      std::vector<std::string> votes;
      for (const auto &[voter, choice] : listing.challenge->votes)
        votes.push_back(fmt::format("{}:{}", voter, to_string(choice)));
      out += fmt::format("  challenge by={} vote_deadline={} votes={}\n",
                         listing.challenge->challenger, listing.challenge->vote_deadline,
                         join(votes, ","));
    }
  }

  out += "[mechanisms]\n";
  for (const auto &[id, prize] : incentives_->fixed_prizes()) {
    std::vector<std::string> signer_list(prize.signers.begin(), prize.signers.end());
    out += fmt::format("fixed {} target={} prize={} signers={} threshold={} paid={}\n", id,
                       prize.target, prize.prize, join(signer_list, ","), prize.threshold,
                       prize.paid ? 1 : 0);
  }
  for (const auto &[id, series] : incentives_->halvings())
    out += fmt::format("halving {} target={} base={} proofs_paid={} closed={} residue={}\n", id,
                       series.target, series.base_prize, series.proofs_paid,
                       series.closed ? 1 : 0, series.residue);
  for (const auto &[contribution, pool] : incentives_->pools()) {
    std::vector<std::string> stakes;
    for (const auto &[staker, amount, escrow] : pool.stakes)
      stakes.push_back(fmt::format("{}:{}", staker, amount));
    out += fmt::format("pool {} rho={}/{} settled={} stakes={}\n", contribution.short_id(),
                       pool.rho_num, pool.rho_denom, pool.settled ? 1 : 0, join(stakes, ","));
  }

  out += "[licenses]\n";
  for (const auto &[contribution, importer] : incentives_->licenses_paid())
    out += fmt::format("paid {} by {}\n", contribution.short_id(), importer);
  for (const auto &charge : incentives_->license_charges())
    out += fmt::format("charge {} importer={} fee={} beneficiary={} at={}\n",
                       charge.contribution.short_id(), charge.importer, charge.fee,
                       charge.beneficiary, charge.at);

  out += "[agents]\n";
  for (const auto &agent : agents_) {
    std::vector<std::string> attempts(agent.attempts.begin(), agent.attempts.end());
    out += fmt::format("agent {} {} attempts={} next_directive={}\n", agent.decl.name,
                       agent.decl.kind == AgentDecl::Kind::Human ? "human" : "aitool",
                       join(attempts, ","), agent.next_directive);
  }
  return out;
}

std::uint64_t World::fingerprint() const { return fnv1a(dump()); }

} // namespace proofchain
