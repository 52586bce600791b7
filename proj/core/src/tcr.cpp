#include "proofchain/tcr.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "proofchain/apportion.hpp"

namespace proofchain {

void TcrParams::check() const {
  if (delay_period == 0 || vote_period == 0)
    throw ProtocolError(Errc::BadParams, "periods must be positive");
  if (min_bond == 0 || inclusion_stake == 0 || dispute_stake == 0)
    throw ProtocolError(Errc::BadParams, "stakes must be positive");
  if (challenger_share_denom == 0 || challenger_share_num > challenger_share_denom)
    throw ProtocolError(Errc::BadParams, "challenger share must lie in [0, 1]");
}

const char *to_string(ListingState state) {
  switch (state) {
  case ListingState::Pending: return "pending";
  case ListingState::Challenged: return "challenged";
  case ListingState::Listed: return "listed";
  case ListingState::Rejected: return "rejected";
  }
  return "?";
}

const char *to_string(VoteChoice choice) {
  return choice == VoteChoice::Include ? "include" : "exclude";
}

bool ChallengeRound::has_voted(const AccountId &voter) const {
  return std::any_of(votes.begin(), votes.end(),
                     [&](const auto &vote) { return vote.first == voter; });
}

std::size_t ChallengeRound::count(VoteChoice choice) const {
  return static_cast<std::size_t>(std::count_if(
      votes.begin(), votes.end(), [&](const auto &vote) { return vote.second == choice; }));
}

Tcr::Tcr(TcrParams params, Ledger &ledger, const Registry &registry)
    : params_(params), ledger_(ledger), registry_(registry) {
  params_.check();
}

void Tcr::bond(const AccountId &prover, TokenAmount amount) {
  if (bonds_.count(prover))
    throw ProtocolError(Errc::AlreadyBonded, fmt::format("'{}' is already bonded", prover));
  if (amount < params_.min_bond)
    throw ProtocolError(Errc::BelowMinBond,
                        fmt::format("{} is below the minimum bond {}", amount, params_.min_bond));
  EscrowId escrow = ledger_.escrow_lock(prover, amount, fmt::format("bond:{}", prover));
  bonds_.emplace(prover, std::move(escrow));
}

bool Tcr::is_bonded(const AccountId &prover) const { return bonds_.count(prover) > 0; }

const TcrListing &Tcr::propose(const std::string &record_id, const AccountId &proposer, Tick now) {
  if (!registry_.has(record_id))
    throw ProtocolError(Errc::UnknownRecord, fmt::format("no record '{}'", record_id));
  if (listings_.count(record_id))
    throw ProtocolError(Errc::AlreadyProposed, fmt::format("'{}' already proposed", record_id));

  TcrListing listing;
  listing.record_id = record_id;
  listing.proposer = proposer;
  listing.inclusion_escrow =
      ledger_.escrow_lock(proposer, params_.inclusion_stake, fmt::format("inclusion:{}", record_id));
  listing.proposed_at = now;
  listing.delay_deadline = now + params_.delay_period;
  return listings_.emplace(record_id, std::move(listing)).first->second;
}

const TcrListing &Tcr::challenge(const std::string &record_id, const AccountId &challenger,
                                 Tick now) {
  auto it = listings_.find(record_id);
  if (it == listings_.end())
    throw ProtocolError(Errc::UnknownListing, fmt::format("no listing '{}'", record_id));
  TcrListing &listing = it->second;
  if (listing.state != ListingState::Pending)
    throw ProtocolError(Errc::NotPending,
                        fmt::format("'{}' is {}", record_id, to_string(listing.state)));
  if (now >= listing.delay_deadline)
    throw ProtocolError(Errc::DeadlinePassed,
                        fmt::format("delay period for '{}' ended at tick {}", record_id,
                                    listing.delay_deadline));
  if (!is_bonded(challenger))
    throw ProtocolError(Errc::NotBonded, fmt::format("'{}' is not a bonded prover", challenger));

  EscrowId dispute =
      ledger_.escrow_lock(challenger, params_.dispute_stake, fmt::format("dispute:{}", record_id));
  listing.state = ListingState::Challenged;
  listing.challenge = ChallengeRound{challenger, std::move(dispute), now + params_.vote_period, {}};
  return listing;
}

void Tcr::vote(const std::string &record_id, const AccountId &voter, VoteChoice choice, Tick now) {
  auto it = listings_.find(record_id);
  if (it == listings_.end())
    throw ProtocolError(Errc::UnknownListing, fmt::format("no listing '{}'", record_id));
  TcrListing &listing = it->second;
  if (listing.state != ListingState::Challenged || !listing.challenge)
    throw ProtocolError(Errc::NoActiveVote, fmt::format("no vote open on '{}'", record_id));
  if (now >= listing.challenge->vote_deadline)
    throw ProtocolError(Errc::NoActiveVote,
                        fmt::format("vote on '{}' closed at tick {}", record_id,
                                    listing.challenge->vote_deadline));
  if (!is_bonded(voter))
    throw ProtocolError(Errc::NotBonded, fmt::format("'{}' is not a bonded prover", voter));
  if (listing.challenge->has_voted(voter))
    throw ProtocolError(Errc::AlreadyVoted, fmt::format("'{}' already voted", voter));
  listing.challenge->votes.emplace_back(voter, choice);
}

ResolveOutcome Tcr::resolve(const std::string &record_id, Tick now) {
  auto it = listings_.find(record_id);
  if (it == listings_.end())
    throw ProtocolError(Errc::UnknownListing, fmt::format("no listing '{}'", record_id));
  TcrListing &listing = it->second;

  ResolveOutcome outcome;

  if (listing.state == ListingState::Pending) {
    if (now < listing.delay_deadline)
      throw ProtocolError(Errc::NotDue, fmt::format("delay for '{}' runs until tick {}", record_id,
                                                    listing.delay_deadline));
    // Unchallenged: the record enters the canonical registry, stake returned.
    ledger_.escrow_release(listing.inclusion_escrow,
                           {{listing.proposer, params_.inclusion_stake}});
    outcome.payouts.push_back({listing.proposer, params_.inclusion_stake, "stake_return"});
    listing.state = ListingState::Listed;
    listing.listed_at = now;
    listing.weight = 0;
    outcome.state = listing.state;
    return outcome;
  }

  if (listing.state != ListingState::Challenged || !listing.challenge)
    throw ProtocolError(Errc::NotDue,
                        fmt::format("'{}' is already {}", record_id, to_string(listing.state)));

  ChallengeRound &round = *listing.challenge;
  if (now < round.vote_deadline)
    throw ProtocolError(Errc::NotDue, fmt::format("vote on '{}' runs until tick {}", record_id,
                                                  round.vote_deadline));

  std::size_t include = round.count(VoteChoice::Include);
  std::size_t exclude = round.count(VoteChoice::Exclude);

  if (include >= exclude) {
    // Listed; ties (including a silent vote) favor the contributor. The
    // challenger's dispute stake goes to the contributor and the curators who
    // voted to include.
    TokenAmount contributor_cut = (params_.dispute_stake + 1) / 2;
    std::vector<AccountId> include_voters;
    for (const auto &[voter, choice] : round.votes)
      if (choice == VoteChoice::Include)
        include_voters.push_back(voter);
    if (include_voters.empty())
      contributor_cut = params_.dispute_stake;

    std::vector<Payout> dispute_payouts{{listing.proposer, contributor_cut}};
    outcome.payouts.push_back({listing.proposer, contributor_cut, "contributor_reward"});
    if (!include_voters.empty()) {
      auto shares = equal_split(params_.dispute_stake - contributor_cut, include_voters.size());
      for (std::size_t i = 0; i < include_voters.size(); ++i) {
        dispute_payouts.emplace_back(include_voters[i], shares[i]);
        outcome.payouts.push_back({include_voters[i], shares[i], "voter_reward"});
      }
    }
    ledger_.escrow_release(round.dispute_escrow, dispute_payouts);
    ledger_.escrow_release(listing.inclusion_escrow, {{listing.proposer, params_.inclusion_stake}});
    outcome.payouts.push_back({listing.proposer, params_.inclusion_stake, "stake_return"});

    listing.state = ListingState::Listed;
    listing.listed_at = now;
    listing.weight = include;
  } else {
    // Rejected; the challenger receives a share of the inclusion stake and
    // the voters who rejected split the remainder.
    TokenAmount challenger_cut = static_cast<TokenAmount>(
        (static_cast<unsigned __int128>(params_.inclusion_stake) * params_.challenger_share_num) /
        params_.challenger_share_denom);
    std::vector<AccountId> exclude_voters;
    for (const auto &[voter, choice] : round.votes)
      if (choice == VoteChoice::Exclude)
        exclude_voters.push_back(voter);

    std::vector<Payout> inclusion_payouts{{round.challenger, challenger_cut}};
    outcome.payouts.push_back({round.challenger, challenger_cut, "challenger_share"});
    auto shares = equal_split(params_.inclusion_stake - challenger_cut, exclude_voters.size());
    for (std::size_t i = 0; i < exclude_voters.size(); ++i) {
      inclusion_payouts.emplace_back(exclude_voters[i], shares[i]);
      outcome.payouts.push_back({exclude_voters[i], shares[i], "voter_reward"});
    }
    ledger_.escrow_release(listing.inclusion_escrow, inclusion_payouts);
    ledger_.escrow_release(round.dispute_escrow, {{round.challenger, params_.dispute_stake}});
    outcome.payouts.push_back({round.challenger, params_.dispute_stake, "stake_return"});

    listing.state = ListingState::Rejected;
  }

  outcome.state = listing.state;
  return outcome;
}

bool Tcr::has_listing(const std::string &record_id) const { return listings_.count(record_id) > 0; }

const TcrListing &Tcr::listing(const std::string &record_id) const {
  auto it = listings_.find(record_id);
  if (it == listings_.end())
    throw ProtocolError(Errc::UnknownListing, fmt::format("no listing '{}'", record_id));
  return it->second;
}

} // namespace proofchain
