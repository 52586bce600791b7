#include "proofchain/errors.hpp"

namespace proofchain {

const char *errc_name(Errc code) {
  switch (code) {
  case Errc::DuplicateAccount: return "DuplicateAccount";
  case Errc::UnknownAccount: return "UnknownAccount";
  case Errc::InsufficientBalance: return "InsufficientBalance";
  case Errc::UnknownEscrow: return "UnknownEscrow";
  case Errc::PayoutMismatch: return "PayoutMismatch";
  case Errc::NotFound: return "NotFound";
  case Errc::MalformedRecord: return "MalformedRecord";
  case Errc::ParseError: return "ParseError";
  case Errc::UnknownStatement: return "UnknownStatement";
  case Errc::NotValidated: return "NotValidated";
  case Errc::BelowMinBond: return "BelowMinBond";
  case Errc::AlreadyBonded: return "AlreadyBonded";
  case Errc::NotBonded: return "NotBonded";
  case Errc::UnknownRecord: return "UnknownRecord";
  case Errc::AlreadyProposed: return "AlreadyProposed";
  case Errc::NotPending: return "NotPending";
  case Errc::DeadlinePassed: return "DeadlinePassed";
  case Errc::AlreadyVoted: return "AlreadyVoted";
  case Errc::NoActiveVote: return "NoActiveVote";
  case Errc::NotDue: return "NotDue";
  case Errc::UnknownListing: return "UnknownListing";
  case Errc::BadParams: return "BadParams";
  case Errc::EmptySigners: return "EmptySigners";
  case Errc::BadThreshold: return "BadThreshold";
  case Errc::NotSigner: return "NotSigner";
  case Errc::AlreadyPaid: return "AlreadyPaid";
  case Errc::TreeDoesNotProveTarget: return "TreeDoesNotProveTarget";
  case Errc::TooManyPlayers: return "TooManyPlayers";
  case Errc::TargetUnprovenByGrandCoalition: return "TargetUnprovenByGrandCoalition";
  case Errc::DuplicateTree: return "DuplicateTree";
  case Errc::SeriesClosed: return "SeriesClosed";
  case Errc::BranchNotInTree: return "BranchNotInTree";
  case Errc::UnknownMechanism: return "UnknownMechanism";
  case Errc::DuplicateMechanism: return "DuplicateMechanism";
  case Errc::RhoMismatch: return "RhoMismatch";
  case Errc::RestrictedUse: return "RestrictedUse";
  case Errc::Unpaid: return "Unpaid";
  case Errc::ScenarioError: return "ScenarioError";
  case Errc::DivergenceDetected: return "DivergenceDetected";
  case Errc::BadTick: return "BadTick";
  }
  return "UnknownError";
}

ProtocolError::ProtocolError(Errc code, const std::string &message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

InvariantViolation::InvariantViolation(const std::string &message)
    : std::runtime_error("invariant violation: " + message) {}

} // namespace proofchain
