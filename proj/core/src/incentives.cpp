#include "proofchain/incentives.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "proofchain/apportion.hpp"
#include "proofchain/shapley.hpp"

namespace proofchain {

const char *to_string(AllocationPolicy::Kind kind) {
  return kind == AllocationPolicy::Kind::Shapley ? "shapley" : "equal";
}

AllocationPolicy parse_allocation_policy(const std::string &text) {
  if (text == "shapley")
    return {AllocationPolicy::Kind::Shapley};
  if (text == "equal")
    return {AllocationPolicy::Kind::EqualSplit};
  throw ProtocolError(Errc::ParseError, fmt::format("unknown allocation policy '{}'", text));
}

const char *to_string(LicenseDecision decision) {
  switch (decision) {
  case LicenseDecision::Allowed: return "allowed";
  case LicenseDecision::Charged: return "charged";
  case LicenseDecision::DeniedRestricted: return "denied_restricted";
  case LicenseDecision::DeniedUnpaid: return "denied_unpaid";
  }
  return "?";
}

std::vector<Payout> allocate_among(const std::vector<ContentAddress> &justification_set,
                                   const StatementId &target, const ProofDag &dag,
                                   TokenAmount amount, AllocationPolicy policy) {
  // Players: authors merged per account, ordered by their earliest
  // justification in the set.
  struct PlayerRef {
    AccountId account;
    Tick first_at;
    std::uint64_t first_seq;
  };
  std::vector<PlayerRef> players;
  std::vector<const Justification *> justs;
  for (const auto &address : justification_set) {
    const Justification &just = dag.justification(address);
    justs.push_back(&just);
    auto it = std::find_if(players.begin(), players.end(),
                           [&](const PlayerRef &p) { return p.account == just.author; });
    if (it == players.end())
      players.push_back({just.author, just.ingested_at, just.seq});
    else if (std::pair(just.ingested_at, just.seq) < std::pair(it->first_at, it->first_seq)) {
      it->first_at = just.ingested_at;
      it->first_seq = just.seq;
    }
  }
  std::sort(players.begin(), players.end(), [](const PlayerRef &a, const PlayerRef &b) {
    return std::tie(a.first_at, a.first_seq) < std::tie(b.first_at, b.first_seq);
  });

  std::vector<TokenAmount> amounts;
  if (policy.kind == AllocationPolicy::Kind::EqualSplit) {
    amounts = equal_split(amount, players.size());
  } else {
    auto wins = [&](std::uint32_t mask) {
      std::set<ContentAddress> allowed;
      for (const Justification *just : justs) {
        for (std::size_t i = 0; i < players.size(); ++i)
          if (players[i].account == just->author && (mask & (1u << i))) {
            allowed.insert(just->contribution);
            break;
          }
      }
      return dag.proven_with(allowed, target);
    };
    amounts = shapley_amounts(amount, shapley_shares(players.size(), wins));
  }

  std::vector<Payout> payouts;
  payouts.reserve(players.size());
  for (std::size_t i = 0; i < players.size(); ++i)
    payouts.emplace_back(players[i].account, amounts[i]);
  return payouts;
}

TokenAmount HalvingSeries::next_payment() const {
  return proofs_paid < payment_amounts.size() ? payment_amounts[proofs_paid] : 0;
}

Incentives::Incentives(Ledger &ledger, const ProofDag &dag) : ledger_(ledger), dag_(dag) {}

void Incentives::require_unused_id(const std::string &id) const {
  if (id.empty())
    throw ProtocolError(Errc::ScenarioError, "mechanism id must be non-empty");
  if (fixed_prizes_.count(id) || halvings_.count(id))
    throw ProtocolError(Errc::DuplicateMechanism, fmt::format("mechanism '{}' already deployed", id));
}

const FixedPrize &Incentives::deploy_fixed_prize(const std::string &id, const AccountId &deployer,
                                                 const StatementId &target, TokenAmount prize,
                                                 const std::vector<AccountId> &signers,
                                                 std::size_t threshold, AllocationPolicy policy) {
  require_unused_id(id);
  std::vector<AccountId> unique_signers = signers;
  std::sort(unique_signers.begin(), unique_signers.end());
  unique_signers.erase(std::unique(unique_signers.begin(), unique_signers.end()),
                       unique_signers.end());
  if (unique_signers.empty())
    throw ProtocolError(Errc::EmptySigners, "a prize needs at least one signer");
  if (threshold == 0 || threshold > unique_signers.size())
    throw ProtocolError(Errc::BadThreshold,
                        fmt::format("threshold {} of {} signers", threshold, unique_signers.size()));

  FixedPrize contract;
  contract.id = id;
  contract.deployer = deployer;
  contract.target = target;
  contract.prize = prize;
  contract.signers = std::move(unique_signers);
  contract.threshold = threshold;
  contract.policy = policy;
  contract.escrow = ledger_.escrow_lock(deployer, prize, fmt::format("prize:{}", id));
  deploy_order_.push_back(id);
  return fixed_prizes_.emplace(id, std::move(contract)).first->second;
}

AwardResult Incentives::approve_and_award(const std::string &id, const AccountId &signer,
                                          const ProofTree &tree) {
  auto it = fixed_prizes_.find(id);
  if (it == fixed_prizes_.end())
    throw ProtocolError(Errc::UnknownMechanism, fmt::format("no fixed prize '{}'", id));
  FixedPrize &contract = it->second;
  if (contract.paid)
    throw ProtocolError(Errc::AlreadyPaid, fmt::format("'{}' already paid out", id));
  if (std::find(contract.signers.begin(), contract.signers.end(), signer) ==
      contract.signers.end())
    throw ProtocolError(Errc::NotSigner, fmt::format("'{}' may not sign for '{}'", signer, id));
  if (!dag_.tree_proves(tree, contract.target))
    throw ProtocolError(Errc::TreeDoesNotProveTarget,
                        fmt::format("tree does not prove '{}'", contract.target));

  AwardResult result;
  auto &approvers = contract.approvals[tree.key()];
  approvers.insert(signer);
  if (approvers.size() < contract.threshold)
    return result;

  result.paid = true;
  result.payouts = award_for_tree(contract.escrow, contract.prize, tree, contract.policy,
                                  fmt::format("prize:{}", id));
  contract.paid = true;
  contract.winner = tree.key();
  auto released = on_mechanism_death(contract.target);
  result.payouts.insert(result.payouts.end(), released.begin(), released.end());
  return result;
}

const HalvingSeries &Incentives::deploy_halving(const std::string &id, const AccountId &deployer,
                                                const StatementId &target, TokenAmount base_prize,
                                                AllocationPolicy policy) {
  require_unused_id(id);
  if (base_prize == 0)
    throw ProtocolError(Errc::BadParams, "base prize must be positive");
  if (ledger_.balance(deployer) < 2 * base_prize)
    throw ProtocolError(Errc::InsufficientBalance,
                        fmt::format("deploying '{}' requires {}", id, 2 * base_prize));

  HalvingSeries series;
  series.id = id;
  series.deployer = deployer;
  series.target = target;
  series.base_prize = base_prize;
  series.policy = policy;
  TokenAmount locked = 0;
  for (TokenAmount payment = base_prize; payment > 0; payment /= 2) {
    series.payment_amounts.push_back(payment);
    series.payment_escrows.push_back(ledger_.escrow_lock(
        deployer, payment, fmt::format("halving:{}:{}", id, series.payment_amounts.size())));
    locked += payment;
  }
  series.residue = 2 * base_prize - locked;
  series.residue_escrow =
      ledger_.escrow_lock(deployer, series.residue, fmt::format("halving:{}:residue", id));
  deploy_order_.push_back(id);
  return halvings_.emplace(id, std::move(series)).first->second;
}

AwardResult Incentives::register_halving(const std::string &id, const ProofTree &tree) {
  auto it = halvings_.find(id);
  if (it == halvings_.end())
    throw ProtocolError(Errc::UnknownMechanism, fmt::format("no halving series '{}'", id));
  HalvingSeries &series = it->second;
  if (series.closed)
    throw ProtocolError(Errc::SeriesClosed, fmt::format("'{}' paid its full schedule", id));
  if (!dag_.tree_proves(tree, series.target))
    throw ProtocolError(Errc::TreeDoesNotProveTarget,
                        fmt::format("tree does not prove '{}'", series.target));
  if (series.registered.count(tree.key()))
    throw ProtocolError(Errc::DuplicateTree, "this proof was already rewarded");

  AwardResult result;
  result.paid = true;
  TokenAmount payment = series.payment_amounts[series.proofs_paid];
  EscrowId escrow = series.payment_escrows[series.proofs_paid];
  result.payouts =
      award_for_tree(escrow, payment, tree, series.policy, fmt::format("halving:{}", id));
  series.registered.insert(tree.key());
  series.proofs_paid += 1;

  if (series.proofs_paid == series.payment_amounts.size()) {
    ledger_.escrow_release(series.residue_escrow, {{series.deployer, series.residue}});
    result.payouts.push_back({series.deployer, series.residue, "residue_refund"});
    series.closed = true;
    auto released = on_mechanism_death(series.target);
    result.payouts.insert(result.payouts.end(), released.begin(), released.end());
  }
  return result;
}

void Incentives::stake_branch(const AccountId &staker, const ContentAddress &contribution,
                              TokenAmount amount, std::uint64_t rho_num,
                              std::uint64_t rho_denom) {
  if (!dag_.has_justification(contribution))
    throw ProtocolError(Errc::NotFound,
                        fmt::format("no justification to stake on at {}", contribution.short_id()));
  if (rho_denom == 0 || rho_num > rho_denom)
    throw ProtocolError(Errc::BadParams, "staker pool fraction must lie in [0, 1]");

  auto it = pools_.find(contribution);
  if (it == pools_.end()) {
    BranchStakePool pool;
    pool.contribution = contribution;
    pool.rho_num = rho_num;
    pool.rho_denom = rho_denom;
    it = pools_.emplace(contribution, std::move(pool)).first;
    pool_order_.push_back(contribution);
  } else if (it->second.settled) {
    throw ProtocolError(Errc::BranchNotInTree,
                        fmt::format("pool on {} already settled", contribution.short_id()));
  } else if (it->second.rho_num * rho_denom != rho_num * it->second.rho_denom) {
    throw ProtocolError(Errc::RhoMismatch, "pool fraction is fixed at the first stake");
  }
  EscrowId escrow =
      ledger_.escrow_lock(staker, amount, fmt::format("stake:{}", contribution.short_id()));
  it->second.stakes.emplace_back(staker, amount, escrow);
}

BranchSettlement Incentives::settle_branch(const ContentAddress &contribution,
                                           const ProofTree &tree, TokenAmount reward) {
  auto it = pools_.find(contribution);
  if (it == pools_.end() || it->second.settled)
    throw ProtocolError(Errc::NotFound,
                        fmt::format("no live stake pool on {}", contribution.short_id()));
  BranchStakePool &pool = it->second;

  BranchSettlement settlement;
  for (const auto &[statement, address] : tree.choices)
    if (address == contribution) {
      settlement.in_tree = true;
      break;
    }

  std::vector<std::uint64_t> weights;
  weights.reserve(pool.stakes.size());
  TokenAmount total_stake = 0;
  for (const auto &[staker, amount, escrow] : pool.stakes) {
    weights.push_back(amount);
    total_stake += amount;
  }
  if (settlement.in_tree && reward > 0 && total_stake > 0) {
    TokenAmount pool_take = static_cast<TokenAmount>(
        (static_cast<unsigned __int128>(reward) * pool.rho_num) / pool.rho_denom);
    std::vector<TokenAmount> shares = apportion(pool_take, weights);
    for (std::size_t i = 0; i < pool.stakes.size(); ++i)
      settlement.staker_shares.emplace_back(std::get<0>(pool.stakes[i]), shares[i]);
  }

  for (const auto &[staker, amount, escrow] : pool.stakes) {
    ledger_.escrow_release(escrow, {{staker, amount}});
    settlement.stake_returns.push_back({staker, amount, "stake_return"});
  }
  pool.settled = true;
  return settlement;
}

LicenseDecision Incentives::check_and_charge_license(const AccountId &importer,
                                                     const ContentAddress &contribution,
                                                     const RightToUse &rights, Tick now) {
  switch (rights.kind) {
  case RightToUse::Kind::FreeToUse:
    return LicenseDecision::Allowed;
  case RightToUse::Kind::RestrictedToUse:
    return LicenseDecision::DeniedRestricted;
  case RightToUse::Kind::PayToUse:
    break;
  }
  if (paid_.count({contribution, importer}))
    return LicenseDecision::Allowed; // the fee is charged once per importer
  try {
    ledger_.transfer(importer, rights.beneficiary, rights.fee);
  } catch (const ProtocolError &) {
    return LicenseDecision::DeniedUnpaid;
  }
  paid_.insert({contribution, importer});
  charges_.push_back({contribution, importer, rights.fee, rights.beneficiary, now});
  return LicenseDecision::Charged;
}

bool Incentives::license_paid(const AccountId &importer, const ContentAddress &contribution) const {
  return paid_.count({contribution, importer}) > 0;
}

bool Incentives::has_mechanism(const std::string &id) const {
  return fixed_prizes_.count(id) > 0 || halvings_.count(id) > 0;
}

const FixedPrize &Incentives::fixed_prize(const std::string &id) const {
  auto it = fixed_prizes_.find(id);
  if (it == fixed_prizes_.end())
    throw ProtocolError(Errc::UnknownMechanism, fmt::format("no fixed prize '{}'", id));
  return it->second;
}

const HalvingSeries &Incentives::halving(const std::string &id) const {
  auto it = halvings_.find(id);
  if (it == halvings_.end())
    throw ProtocolError(Errc::UnknownMechanism, fmt::format("no halving series '{}'", id));
  return it->second;
}

bool Incentives::target_has_live_mechanism(const StatementId &target) const {
  for (const auto &[id, prize] : fixed_prizes_)
    if (prize.target == target && !prize.paid)
      return true;
  for (const auto &[id, series] : halvings_)
    if (series.target == target && !series.closed)
      return true;
  return false;
}

std::vector<PayoutEntry> Incentives::award_for_tree(const EscrowId &escrow, TokenAmount amount,
                                                    const ProofTree &tree,
                                                    AllocationPolicy policy,
                                                    const std::string &reason) {
  std::vector<PayoutEntry> entries;
  std::vector<Payout> release;

  // Stakers on branches inside the winning tree take their share first,
  // clamped so the takes never exceed the payment.
  TokenAmount remaining = amount;
  for (const auto &contribution : pool_order_) {
    const BranchStakePool &pool = pools_.at(contribution);
    if (pool.settled)
      continue;
    bool in_tree = false;
    for (const auto &[statement, address] : tree.choices)
      if (address == contribution) {
        in_tree = true;
        break;
      }
    if (!in_tree)
      continue;
    BranchSettlement settlement = settle_branch(contribution, tree, remaining);
    for (const auto &[staker, share] : settlement.staker_shares) {
      release.emplace_back(staker, share);
      entries.push_back({staker, share, "branch_stake"});
      remaining -= share;
    }
    for (const auto &entry : settlement.stake_returns)
      entries.push_back(entry);
  }

  for (const auto &[account, share] : allocate_among(tree.key(), tree.root, dag_, remaining,
                                                     policy)) {
    release.emplace_back(account, share);
    entries.push_back({account, share, reason});
  }
  ledger_.escrow_release(escrow, release);
  return entries;
}

std::vector<PayoutEntry> Incentives::on_mechanism_death(const StatementId &target) {
  std::vector<PayoutEntry> entries;
  if (target_has_live_mechanism(target))
    return entries;
  std::set<StatementId> cone = dag_.reachable_statements(target);
  for (const auto &contribution : pool_order_) {
    BranchStakePool &pool = pools_.at(contribution);
    if (pool.settled)
      continue;
    const Justification &just = dag_.justification(contribution);
    if (!cone.count(just.target))
      continue;
    // No reward can reach this branch any more; return the stakes.
    for (const auto &[staker, amount, escrow] : pool.stakes) {
      ledger_.escrow_release(escrow, {{staker, amount}});
      entries.push_back({staker, amount, "stake_return"});
    }
    pool.settled = true;
  }
  return entries;
}

} // namespace proofchain
