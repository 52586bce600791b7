#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofchain/ledger.hpp"
#include "proofchain/proof_dag.hpp"
#include "proofchain/registry.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

struct AllocationPolicy {
  enum class Kind { Shapley, EqualSplit };
  Kind kind = Kind::Shapley;
};

const char *to_string(AllocationPolicy::Kind kind);
AllocationPolicy parse_allocation_policy(const std::string &text);

// Exact integer payouts distributing `amount` among the authors of the given
// justifications. Players are the deduplicated authors in first-contribution
// order. Under Shapley, a coalition wins iff the justifications authored by
// its members suffice to prove `target`; shares are computed exactly and
// integerized by largest remainder. The payouts sum to `amount` and may
// contain zero entries (dummy players).
std::vector<Payout> allocate_among(const std::vector<ContentAddress> &justification_set,
                                   const StatementId &target, const ProofDag &dag,
                                   TokenAmount amount, AllocationPolicy policy);

struct PayoutEntry {
  AccountId account;
  TokenAmount amount = 0;
  std::string reason;
};

// A prize escrowed at deploy and paid once a threshold of signers approves
// one proof tree. The prize is split among the winning tree's contributors
// by the allocation policy.
struct FixedPrize {
  std::string id;
  AccountId deployer;
  StatementId target;
  TokenAmount prize = 0;
  std::vector<AccountId> signers; // unique, non-empty
  std::size_t threshold = 1;
  AllocationPolicy policy;
  EscrowId escrow;
  std::map<std::vector<ContentAddress>, std::set<AccountId>> approvals; // tree key -> signers
  bool paid = false;
  std::optional<std::vector<ContentAddress>> winner;
};

// Pays base_prize, then half, then a quarter (floored), ... to successive
// distinct proofs of one statement. The deployer escrows 2x base_prize up
// front — one escrow per future payment plus the residue — so the series can
// never cost more than twice the base prize; the residue returns to the
// deployer when the payment schedule reaches zero.
struct HalvingSeries {
  std::string id;
  AccountId deployer;
  StatementId target;
  TokenAmount base_prize = 0;
  AllocationPolicy policy;
  std::vector<TokenAmount> payment_amounts; // R, floor(R/2), ... while > 0
  std::vector<EscrowId> payment_escrows;
  TokenAmount residue = 0;
  EscrowId residue_escrow;
  std::size_t proofs_paid = 0;
  bool closed = false;
  std::set<std::vector<ContentAddress>> registered;

  TokenAmount next_payment() const;
};

// Tokens escrowed on one branch of partial progress. When a paying proof tree
// contains the staked justification, the stakers take floor(rho * payment),
// pro-rata by stake, and the contributors split the rest; stakes are always
// returned on settlement.
struct BranchStakePool {
  ContentAddress contribution;
  std::uint64_t rho_num = 1;
  std::uint64_t rho_denom = 4;
  std::vector<std::tuple<AccountId, TokenAmount, EscrowId>> stakes; // arrival order
  bool settled = false;
};

struct BranchSettlement {
  bool in_tree = false;
  std::vector<Payout> staker_shares;    // empty when not in the tree
  std::vector<PayoutEntry> stake_returns;
};

enum class LicenseDecision { Allowed, Charged, DeniedRestricted, DeniedUnpaid };
const char *to_string(LicenseDecision decision);

struct LicenseCharge {
  ContentAddress contribution;
  AccountId importer;
  TokenAmount fee = 0;
  AccountId beneficiary;
  Tick at = 0;
};

struct AwardResult {
  bool paid = false;
  std::vector<PayoutEntry> payouts;
};

// The deployed incentive mechanisms plus the licensing sublayer. Mechanisms
// are passive objects: every state change is an explicit call, all token
// movement goes through the shared ledger, and awards release escrows
// exactly, so conservation is preserved by construction.
class Incentives {
public:
  Incentives(Ledger &ledger, const ProofDag &dag);

  const FixedPrize &deploy_fixed_prize(const std::string &id, const AccountId &deployer,
                                       const StatementId &target, TokenAmount prize,
                                       const std::vector<AccountId> &signers,
                                       std::size_t threshold, AllocationPolicy policy);
  // Records the signer's approval of `tree`; pays out once the approvals for
  // one tree reach the threshold. The tree is re-validated against the dag.
  AwardResult approve_and_award(const std::string &id, const AccountId &signer,
                                const ProofTree &tree);

  const HalvingSeries &deploy_halving(const std::string &id, const AccountId &deployer,
                                      const StatementId &target, TokenAmount base_prize,
                                      AllocationPolicy policy);
  // Pays the next halved amount to a distinct proof tree; closes the series
  // and refunds the residue after the last positive payment.
  AwardResult register_halving(const std::string &id, const ProofTree &tree);

  void stake_branch(const AccountId &staker, const ContentAddress &contribution,
                    TokenAmount amount, std::uint64_t rho_num, std::uint64_t rho_denom);
  // Settles the pool on `contribution` against a completed tree: staker
  // shares of `reward` when the branch is in the tree (the BranchNotInTree
  // outcome otherwise), stakes returned either way. The caller pays the
  // shares out of the reward it is distributing.
  BranchSettlement settle_branch(const ContentAddress &contribution, const ProofTree &tree,
                                 TokenAmount reward);

  LicenseDecision check_and_charge_license(const AccountId &importer,
                                           const ContentAddress &contribution,
                                           const RightToUse &rights, Tick now);
  bool license_paid(const AccountId &importer, const ContentAddress &contribution) const;

  bool has_mechanism(const std::string &id) const;
  const FixedPrize &fixed_prize(const std::string &id) const;   // UnknownMechanism
  const HalvingSeries &halving(const std::string &id) const;    // UnknownMechanism
  const std::vector<std::string> &deploy_order() const { return deploy_order_; }
  const std::map<std::string, FixedPrize> &fixed_prizes() const { return fixed_prizes_; }
  const std::map<std::string, HalvingSeries> &halvings() const { return halvings_; }
  const std::vector<ContentAddress> &pool_order() const { return pool_order_; }
  const std::map<ContentAddress, BranchStakePool> &pools() const { return pools_; }
  const std::vector<LicenseCharge> &license_charges() const { return charges_; }
  const std::set<std::pair<ContentAddress, AccountId>> &licenses_paid() const { return paid_; }

  // True while an unpaid fixed prize or an open halving series targets the
  // statement.
  bool target_has_live_mechanism(const StatementId &target) const;

private:
  std::vector<PayoutEntry> award_for_tree(const EscrowId &escrow, TokenAmount amount,
                                          const ProofTree &tree, AllocationPolicy policy,
                                          const std::string &reason);
  std::vector<PayoutEntry> on_mechanism_death(const StatementId &target);
  void require_unused_id(const std::string &id) const;

  Ledger &ledger_;
  const ProofDag &dag_;
  std::map<std::string, FixedPrize> fixed_prizes_;
  std::map<std::string, HalvingSeries> halvings_;
  std::vector<std::string> deploy_order_;
  std::map<ContentAddress, BranchStakePool> pools_;
  std::vector<ContentAddress> pool_order_;
  std::set<std::pair<ContentAddress, AccountId>> paid_;
  std::vector<LicenseCharge> charges_;
};

} // namespace proofchain
