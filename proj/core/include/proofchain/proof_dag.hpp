#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofchain/content_store.hpp"
#include "proofchain/contribution.hpp"
#include "proofchain/registry.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

enum class StatementStatus { Open, Proven };

// One reduction step: `contribution` reduces `target` to `premises`. An
// empty premise list closes the target outright. Alternative justifications
// for the same target are OR-branches; the premises of one justification are
// an AND-group.
struct Justification {
  ContentAddress contribution; // identity of the justification
  StatementId target;
  std::vector<StatementId> premises; // sorted, unique
  AccountId author;
  Tick ingested_at = 0;
  std::uint64_t seq = 0; // ingest order, a total tiebreak within a tick
};

enum class InvalidReason {
  UnresolvedImport,
  CyclicImport,
  UnknownTarget,
  InconsistentKind,
  SelfPremise,
  FiletypeMismatch,
};

const char *to_string(InvalidReason reason);

// Cycle test over the import relation: walks `imports_of` from `start`,
// whose own imports are `initial`, and reports whether any path returns to a
// node on the walk stack (a self-import included). Validation runs this over
// the content store; content addressing makes real cycles unconstructible,
// so on a live store it can only fire on a hash collision — the check guards
// the invariant rather than a reachable state.
bool imports_cyclic(
    const ContentAddress &start, const std::vector<ContentAddress> &initial,
    const std::function<std::vector<ContentAddress>(const ContentAddress &)> &imports_of);

struct Validation {
  bool ok = false;
  std::vector<std::pair<InvalidReason, std::string>> reasons;

  std::string describe() const;
};

// A minimal completed proof of `root`: one chosen justification per covered
// statement, every leaf closed by a premise-free justification or the True
// axiom. Two trees are distinct iff their justification sets differ.
struct ProofTree {
  StatementId root;
  std::map<StatementId, ContentAddress> choices;
  std::set<AccountId> contributors;

  // Sorted justification addresses; the tree's identity.
  std::vector<ContentAddress> key() const;
};

// The statement graph (the protocol's proof-progress diagram): statements
// with Open/Proven status plus justifications between them. Proven is the
// least fixpoint of "True is proven; a statement with a justification whose
// premises are all proven is proven".
class ProofDag {
public:
  ProofDag();

  // Structural validity of a contribution against the current graph and
  // store: imports resolvable and acyclic, record filetype consistent with
  // the blob kind, premise shape legal for the kind, and the target known for
  // proof-bearing kinds (a conjecture introduces its own target). Duplicate
  // signatures are advisory and never invalidate. Throws ParseError when the
  // blob does not parse at all.
  Validation validate(const Record &record, const ContributionBlob &blob,
                      const ContentStore &store) const;

  // Applies a validated contribution: introduces statements, adds the
  // justification, recomputes proven statuses. Throws NotValidated when
  // validate() would reject. Returns false when the contribution was already
  // ingested (no-op).
  bool ingest(const Record &record, const ContributionBlob &blob, const ContentStore &store);

  bool is_proven(const StatementId &statement) const; // UnknownStatement
  bool has_statement(const StatementId &statement) const;
  StatementStatus status(const StatementId &statement) const; // UnknownStatement

  // Open statements still reachable from `target` through justification
  // premises of open statements, `target` included while it is open. Sorted;
  // empty once the target is proven. Throws UnknownStatement.
  std::vector<StatementId> gap_frontier(const StatementId &target) const;

  // All minimal distinct proof trees for `target`, deterministically ordered
  // by their justification keys. Empty when the target is unproven or
  // unknown.
  std::vector<ProofTree> proof_trees(const StatementId &target) const;

  // True iff `tree` is a well-formed minimal proof of `target` against this
  // graph: the choices cover exactly the closure of `target`, every choice is
  // a present justification for its statement, and no cycle occurs.
  bool tree_proves(const ProofTree &tree, const StatementId &target) const;

  // Statement previously ingested with an alpha-equivalent signature, if any.
  std::optional<StatementId> detect_duplicate(const std::string &signature) const;

  // Provability of `target` when only `allowed` justifications exist; the
  // coalition value behind Shapley allocation.
  bool proven_with(const std::set<ContentAddress> &allowed, const StatementId &target) const;

  // Every statement reachable from `target` through justification premises,
  // regardless of status. `target` included. Empty for unknown targets.
  std::set<StatementId> reachable_statements(const StatementId &target) const;

  bool has_justification(const ContentAddress &contribution) const;
  const Justification &justification(const ContentAddress &contribution) const;
  bool was_ingested(const ContentAddress &contribution) const;

  // First contribution that introduced the statement, if any (the True axiom
  // and genesis statements have none).
  const ContentAddress *introduced_by(const StatementId &statement) const;

  const std::map<StatementId, StatementStatus> &statements() const { return statements_; }
  const std::map<ContentAddress, Justification> &justifications() const { return justifications_; }
  const std::map<std::string, StatementId> &signature_index() const { return signature_index_; }

private:
  void recompute_statuses();

  std::map<StatementId, StatementStatus> statements_;
  std::map<StatementId, ContentAddress> introduced_by_;
  std::map<ContentAddress, Justification> justifications_;
  std::map<StatementId, std::vector<ContentAddress>> by_target_; // sorted addresses
  std::map<std::string, StatementId> signature_index_;           // canonical signature -> first statement
  std::set<ContentAddress> ingested_;
  std::uint64_t next_seq_ = 0;
};

} // namespace proofchain
