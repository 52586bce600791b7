#include "proofchain/proof_dag.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "proofchain/signature_canon.hpp"

namespace proofchain {

namespace {

// Record filetypes and blob kinds describe the same artifact at two layers.
bool kind_matches_filetype(ContributionKind kind, Filetype filetype) {
  switch (kind) {
  case ContributionKind::Conjecture: return filetype == Filetype::Conjecture;
  case ContributionKind::Partial: return filetype == Filetype::PartialProof;
  case ContributionKind::Complete:
    return filetype == Filetype::CompletedProof || filetype == Filetype::Theorem;
  case ContributionKind::Tactic: return filetype == Filetype::Tactic;
  case ContributionKind::Definition: return filetype == Filetype::Definition;
  }
  return false;
}

bool adds_justification(ContributionKind kind) {
  return kind == ContributionKind::Partial || kind == ContributionKind::Complete;
}

bool proof_bearing(ContributionKind kind) {
  return kind == ContributionKind::Conjecture || adds_justification(kind);
}

using Assign = std::map<StatementId, ContentAddress>;

std::optional<Assign> merge_assign(const Assign &a, const Assign &b) {
  Assign out = a;
  for (const auto &[statement, address] : b) {
    auto [it, inserted] = out.emplace(statement, address);
    if (!inserted && it->second != address)
      return std::nullopt;
  }
  return out;
}

} // namespace

const char *to_string(InvalidReason reason) {
  switch (reason) {
  case InvalidReason::UnresolvedImport: return "UnresolvedImport";
  case InvalidReason::CyclicImport: return "CyclicImport";
  case InvalidReason::UnknownTarget: return "UnknownTarget";
  case InvalidReason::InconsistentKind: return "InconsistentKind";
  case InvalidReason::SelfPremise: return "SelfPremise";
  case InvalidReason::FiletypeMismatch: return "FiletypeMismatch";
  }
  return "?";
}

std::string Validation::describe() const {
  if (ok)
    return "valid";
  std::string out = "invalid";
  for (const auto &[reason, detail] : reasons)
    out += fmt::format(" [{}: {}]", to_string(reason), detail);
  return out;
}

bool imports_cyclic(
    const ContentAddress &start, const std::vector<ContentAddress> &initial,
    const std::function<std::vector<ContentAddress>(const ContentAddress &)> &imports_of) {
  std::map<ContentAddress, int> color; // 0 new, 1 on stack, 2 done
  std::function<bool(const ContentAddress &, const std::vector<ContentAddress> &)> walk =
      [&](const ContentAddress &node, const std::vector<ContentAddress> &imports) {
        color[node] = 1;
        for (const auto &next : imports) {
          int &mark = color[next];
          if (mark == 1)
            return true;
          if (mark == 0 && walk(next, imports_of(next)))
            return true;
        }
        color[node] = 2;
        return false;
      };
  return walk(start, initial);
}

std::vector<ContentAddress> ProofTree::key() const {
  std::vector<ContentAddress> addresses;
  addresses.reserve(choices.size());
  for (const auto &[statement, address] : choices)
    addresses.push_back(address);
  std::sort(addresses.begin(), addresses.end());
  return addresses;
}

ProofDag::ProofDag() { statements_.emplace(kAxiomStatement, StatementStatus::Proven); }

Validation ProofDag::validate(const Record &record, const ContributionBlob &blob,
                              const ContentStore &store) const {
  ContributionDoc doc = parse_contribution(blob); // ParseError propagates
  ContentAddress address = content_address(canonical_blob(blob));
  if (address != record.file)
    throw ProtocolError(Errc::NotValidated, "record file address does not match blob");

  Validation result;
  auto flag = [&](InvalidReason reason, std::string detail) {
    result.reasons.emplace_back(reason, std::move(detail));
  };

  if (!kind_matches_filetype(doc.kind, record.filetype))
    flag(InvalidReason::FiletypeMismatch,
         fmt::format("kind '{}' vs filetype '{}'", to_string(doc.kind), to_string(record.filetype)));

  if (doc.kind == ContributionKind::Partial) {
    if (doc.premises.empty())
      flag(InvalidReason::InconsistentKind, "partial proof introduces no premises");
    for (const auto &premise : doc.premises)
      if (premise == doc.target) {
        flag(InvalidReason::SelfPremise, fmt::format("'{}' supports itself", doc.target));
        break;
      }
  } else if (!doc.premises.empty()) {
    flag(InvalidReason::InconsistentKind,
         fmt::format("kind '{}' cannot carry premises", to_string(doc.kind)));
  }

  if (adds_justification(doc.kind) && !statements_.count(doc.target))
    flag(InvalidReason::UnknownTarget, fmt::format("no statement '{}'", doc.target));

  for (const auto &import : doc.imports)
    if (!store.contains(import))
      flag(InvalidReason::UnresolvedImport, import.short_id());

  // The import relation over contributions must stay acyclic once this blob
  // is added. Unparseable blobs in the store are leaves.
  auto stored_imports = [&](const ContentAddress &node) -> std::vector<ContentAddress> {
    if (node == address)
      return doc.imports;
    if (store.stored(node)) {
      try {
        return parse_contribution(store.entries().at(node).bytes).imports;
      } catch (const ProtocolError &) {
        // not a contribution document; nothing to follow
      }
    }
    return {};
  };
  if (imports_cyclic(address, doc.imports, stored_imports))
    flag(InvalidReason::CyclicImport, address.short_id());

  result.ok = result.reasons.empty();
  return result;
}

bool ProofDag::ingest(const Record &record, const ContributionBlob &blob,
                      const ContentStore &store) {
  Validation validation = validate(record, blob, store);
  if (!validation.ok)
    throw ProtocolError(Errc::NotValidated, validation.describe());

  ContributionDoc doc = parse_contribution(blob);
  ContentAddress address = content_address(canonical_blob(blob));
  if (ingested_.count(address))
    return false;

  auto introduce = [&](const StatementId &statement) {
    if (statements_.emplace(statement, StatementStatus::Open).second)
      introduced_by_.emplace(statement, address);
  };

  if (doc.kind == ContributionKind::Conjecture)
    introduce(doc.target);

  if (adds_justification(doc.kind)) {
    std::vector<StatementId> premises = doc.premises;
    std::sort(premises.begin(), premises.end());
    premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
    for (const auto &premise : premises)
      introduce(premise);

    Justification just{address, doc.target, std::move(premises), record.author,
                       record.submitted_at, next_seq_++};
    justifications_.emplace(address, std::move(just));
    auto &siblings = by_target_[doc.target];
    siblings.insert(std::lower_bound(siblings.begin(), siblings.end(), address), address);
  }

  if (proof_bearing(doc.kind) && !doc.signature.empty())
    signature_index_.emplace(canonicalize_signature(doc.signature), doc.target);

  ingested_.insert(address);
  recompute_statuses();
  return true;
}

bool ProofDag::is_proven(const StatementId &statement) const {
  return status(statement) == StatementStatus::Proven;
}

bool ProofDag::has_statement(const StatementId &statement) const {
  return statements_.count(statement) > 0;
}

StatementStatus ProofDag::status(const StatementId &statement) const {
  auto it = statements_.find(statement);
  if (it == statements_.end())
    throw ProtocolError(Errc::UnknownStatement, fmt::format("no statement '{}'", statement));
  return it->second;
}

std::vector<StatementId> ProofDag::gap_frontier(const StatementId &target) const {
  if (!statements_.count(target))
    throw ProtocolError(Errc::UnknownStatement, fmt::format("no statement '{}'", target));

  std::set<StatementId> frontier;
  std::set<StatementId> visited;
  std::vector<StatementId> stack{target};
  while (!stack.empty()) {
    StatementId statement = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(statement).second)
      continue;
    if (statements_.at(statement) == StatementStatus::Proven)
      continue; // nothing below a proven statement is still needed
    frontier.insert(statement);
    auto it = by_target_.find(statement);
    if (it == by_target_.end())
      continue;
    for (const auto &address : it->second)
      for (const auto &premise : justifications_.at(address).premises)
        stack.push_back(premise);
  }
  return {frontier.begin(), frontier.end()};
}

std::vector<ProofTree> ProofDag::proof_trees(const StatementId &target) const {
  if (!statements_.count(target))
    return {};

  std::set<StatementId> path;
  std::function<std::vector<Assign>(const StatementId &)> enumerate =
      [&](const StatementId &statement) -> std::vector<Assign> {
    if (statement == kAxiomStatement)
      return {Assign{}};
    if (path.count(statement))
      return {}; // a choice may not depend on itself
    auto it = by_target_.find(statement);
    if (it == by_target_.end())
      return {};
    path.insert(statement);
    std::vector<Assign> out;
    for (const auto &address : it->second) {
      const Justification &just = justifications_.at(address);
      std::vector<Assign> combos{Assign{{statement, address}}};
      for (const auto &premise : just.premises) {
        if (combos.empty())
          break;
        std::vector<Assign> premise_trees = enumerate(premise);
        std::vector<Assign> merged;
        for (const auto &combo : combos)
          for (const auto &premise_tree : premise_trees)
            if (auto joined = merge_assign(combo, premise_tree))
              merged.push_back(std::move(*joined));
        combos = std::move(merged);
      }
      out.insert(out.end(), std::make_move_iterator(combos.begin()),
                 std::make_move_iterator(combos.end()));
    }
    path.erase(statement);
    return out;
  };

  std::map<std::vector<ContentAddress>, Assign> unique;
  for (auto &assign : enumerate(target)) {
    std::vector<ContentAddress> key;
    key.reserve(assign.size());
    for (const auto &[statement, address] : assign)
      key.push_back(address);
    std::sort(key.begin(), key.end());
    unique.emplace(std::move(key), std::move(assign));
  }

  std::vector<ProofTree> trees;
  trees.reserve(unique.size());
  for (auto &[key, assign] : unique) {
    ProofTree tree;
    tree.root = target;
    for (const auto &[statement, address] : assign)
      tree.contributors.insert(justifications_.at(address).author);
    tree.choices = std::move(assign);
    trees.push_back(std::move(tree));
  }
  return trees;
}

bool ProofDag::tree_proves(const ProofTree &tree, const StatementId &target) const {
  if (tree.root != target || !statements_.count(target))
    return false;

  std::set<StatementId> checked;
  std::set<StatementId> path;
  std::function<bool(const StatementId &)> walk = [&](const StatementId &statement) {
    if (statement == kAxiomStatement)
      return true;
    if (path.count(statement))
      return false; // cyclic support
    auto choice = tree.choices.find(statement);
    if (choice == tree.choices.end())
      return false; // uncovered statement
    auto just = justifications_.find(choice->second);
    if (just == justifications_.end() || just->second.target != statement)
      return false;
    if (checked.count(statement))
      return true;
    checked.insert(statement);
    path.insert(statement);
    for (const auto &premise : just->second.premises)
      if (!walk(premise))
        return false;
    path.erase(statement);
    return true;
  };

  if (!walk(target))
    return false;
  return checked.size() == tree.choices.size(); // no unused choices: minimal
}

std::optional<StatementId> ProofDag::detect_duplicate(const std::string &signature) const {
  auto it = signature_index_.find(canonicalize_signature(signature));
  if (it == signature_index_.end())
    return std::nullopt;
  return it->second;
}

bool ProofDag::proven_with(const std::set<ContentAddress> &allowed,
                           const StatementId &target) const {
  std::set<StatementId> proven{kAxiomStatement};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &address : allowed) {
      auto it = justifications_.find(address);
      if (it == justifications_.end() || proven.count(it->second.target))
        continue;
      bool all = true;
      for (const auto &premise : it->second.premises)
        if (!proven.count(premise)) {
          all = false;
          break;
        }
      if (all) {
        proven.insert(it->second.target);
        changed = true;
      }
    }
  }
  return proven.count(target) > 0;
}

std::set<StatementId> ProofDag::reachable_statements(const StatementId &target) const {
  std::set<StatementId> visited;
  if (!statements_.count(target))
    return visited;
  std::vector<StatementId> stack{target};
  while (!stack.empty()) {
    StatementId statement = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(statement).second)
      continue;
    auto it = by_target_.find(statement);
    if (it == by_target_.end())
      continue;
    for (const auto &address : it->second)
      for (const auto &premise : justifications_.at(address).premises)
        stack.push_back(premise);
  }
  return visited;
}

bool ProofDag::has_justification(const ContentAddress &contribution) const {
  return justifications_.count(contribution) > 0;
}

const Justification &ProofDag::justification(const ContentAddress &contribution) const {
  auto it = justifications_.find(contribution);
  if (it == justifications_.end())
    throw ProtocolError(Errc::NotFound,
                        fmt::format("no justification for {}", contribution.short_id()));
  return it->second;
}

bool ProofDag::was_ingested(const ContentAddress &contribution) const {
  return ingested_.count(contribution) > 0;
}

const ContentAddress *ProofDag::introduced_by(const StatementId &statement) const {
  auto it = introduced_by_.find(statement);
  return it == introduced_by_.end() ? nullptr : &it->second;
}

void ProofDag::recompute_statuses() {
  for (auto &[statement, status] : statements_)
    status = statement == kAxiomStatement ? StatementStatus::Proven : StatementStatus::Open;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &[address, just] : justifications_) {
      auto &status = statements_.at(just.target);
      if (status == StatementStatus::Proven)
        continue;
      bool all = true;
      for (const auto &premise : just.premises)
        if (statements_.at(premise) != StatementStatus::Proven) {
          all = false;
          break;
        }
      if (all) {
        status = StatementStatus::Proven;
        changed = true;
      }
    }
  }
}

} // namespace proofchain
