#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofchain/ledger.hpp"
#include "proofchain/registry.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

struct TcrParams {
  TokenAmount min_bond = 10;
  TokenAmount inclusion_stake = 20;
  TokenAmount dispute_stake = 20;
  Tick delay_period = 3;
  Tick vote_period = 3;
  // Fraction of the inclusion stake the challenger wins on rejection.
  std::uint64_t challenger_share_num = 1;
  std::uint64_t challenger_share_denom = 2;

  void check() const; // BadParams unless periods > 0, stakes > 0, share in [0,1]
};

enum class ListingState { Pending, Challenged, Listed, Rejected };
enum class VoteChoice { Include, Exclude };

const char *to_string(ListingState state);
const char *to_string(VoteChoice choice);

struct ChallengeRound {
  AccountId challenger;
  EscrowId dispute_escrow;
  Tick vote_deadline = 0;
  std::vector<std::pair<AccountId, VoteChoice>> votes; // arrival order

  bool has_voted(const AccountId &voter) const;
  std::size_t count(VoteChoice choice) const;
};

struct TcrListing {
  std::string record_id;
  AccountId proposer;
  ListingState state = ListingState::Pending;
  EscrowId inclusion_escrow;
  Tick proposed_at = 0;
  Tick delay_deadline = 0;
  std::optional<ChallengeRound> challenge;
  Tick listed_at = 0;
  std::uint64_t weight = 0; // Include votes behind a listed record
};

struct ResolvePayout {
  AccountId account;
  TokenAmount amount;
  std::string reason; // stake_return / challenger_share / contributor_reward / voter_reward
};

struct ResolveOutcome {
  ListingState state = ListingState::Pending;
  std::vector<ResolvePayout> payouts;
};

// The curation state machine for the canonical registry. Proposers escrow an
// inclusion stake; bonded provers may challenge (escrowing a dispute stake)
// and vote; resolution redistributes the loser's stake by majority rule, ties
// favoring inclusion. Listed/Rejected are terminal. All token movement goes
// through the shared ledger, so resolution conserves supply exactly.
class Tcr {
public:
  Tcr(TcrParams params, Ledger &ledger, const Registry &registry);

  void bond(const AccountId &prover, TokenAmount amount);
  bool is_bonded(const AccountId &prover) const;

  const TcrListing &propose(const std::string &record_id, const AccountId &proposer, Tick now);
  const TcrListing &challenge(const std::string &record_id, const AccountId &challenger, Tick now);
  void vote(const std::string &record_id, const AccountId &voter, VoteChoice choice, Tick now);
  ResolveOutcome resolve(const std::string &record_id, Tick now);

  bool has_listing(const std::string &record_id) const;
  const TcrListing &listing(const std::string &record_id) const; // UnknownListing
  const std::map<std::string, TcrListing> &listings() const { return listings_; }
  const std::map<AccountId, EscrowId> &bonds() const { return bonds_; }
  const TcrParams &params() const { return params_; }

private:
  TcrParams params_;
  Ledger &ledger_;
  const Registry &registry_;
  std::map<std::string, TcrListing> listings_;
  std::map<AccountId, EscrowId> bonds_;
};

} // namespace proofchain
