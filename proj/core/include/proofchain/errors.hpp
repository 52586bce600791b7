#pragma once

#include <stdexcept>
#include <string>

namespace proofchain {

enum class Errc {
  // ledger
  DuplicateAccount,
  UnknownAccount,
  InsufficientBalance,
  UnknownEscrow,
  PayoutMismatch,
  // data layer
  NotFound,
  MalformedRecord,
  // proof dag
  ParseError,
  UnknownStatement,
  NotValidated,
  // tcr
  BelowMinBond,
  AlreadyBonded,
  NotBonded,
  UnknownRecord,
  AlreadyProposed,
  NotPending,
  DeadlinePassed,
  AlreadyVoted,
  NoActiveVote,
  NotDue,
  UnknownListing,
  BadParams,
  // incentives
  EmptySigners,
  BadThreshold,
  NotSigner,
  AlreadyPaid,
  TreeDoesNotProveTarget,
  TooManyPlayers,
  TargetUnprovenByGrandCoalition,
  DuplicateTree,
  SeriesClosed,
  BranchNotInTree,
  UnknownMechanism,
  DuplicateMechanism,
  RhoMismatch,
  RestrictedUse,
  Unpaid,
  // scenario engine
  ScenarioError,
  DivergenceDetected,
  BadTick,
};

const char *errc_name(Errc code);

// Domain error raised by protocol operations. Callers that drive scripted
// scenarios catch these and record them as failed event outcomes.
class ProtocolError : public std::runtime_error {
public:
  ProtocolError(Errc code, const std::string &message);
  Errc code() const { return code_; }

private:
  Errc code_;
};

// A structural guarantee (token conservation, state-machine sanity) was
// broken. Never caught by the event loop; the CLI maps it to exit code 2.
class InvariantViolation : public std::runtime_error {
public:
  explicit InvariantViolation(const std::string &message);
};

} // namespace proofchain
