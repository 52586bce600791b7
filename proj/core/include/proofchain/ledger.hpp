#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "proofchain/errors.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

using EscrowId = std::string;

struct Escrow {
  AccountId holder;    // account the funds were taken from
  std::string purpose; // free-form tag, shown in state dumps
  TokenAmount amount = 0;
};

using Payout = std::pair<AccountId, TokenAmount>;

// Token accounting shared by every module. Supply is created exactly once, by
// genesis; afterwards balances + escrows == total_supply holds after every
// operation. All operations are all-or-nothing: on error the state is
// unchanged.
class Ledger {
public:
  Ledger() = default;

  static Ledger genesis(const std::vector<std::pair<AccountId, TokenAmount>> &allocations);

  void transfer(const AccountId &from, const AccountId &to, TokenAmount amount);
  EscrowId escrow_lock(const AccountId &from, TokenAmount amount, std::string purpose = "");
  void escrow_release(const EscrowId &escrow, const std::vector<Payout> &payouts);

  bool has_account(const AccountId &account) const;
  TokenAmount balance(const AccountId &account) const;
  TokenAmount escrowed(const EscrowId &escrow) const;
  TokenAmount escrowed_total() const;
  TokenAmount total_supply() const { return total_supply_; }
  bool conserved() const;

  const std::map<AccountId, TokenAmount> &balances() const { return balances_; }
  const std::map<EscrowId, Escrow> &escrows() const { return escrows_; }

  // Test hook: credits an account without touching total_supply, deliberately
  // breaking conservation. Drives the CLI invariant-violation exit path.
  void unchecked_credit(const AccountId &account, TokenAmount amount);

private:
  std::map<AccountId, TokenAmount> balances_;
  std::map<EscrowId, Escrow> escrows_;
  TokenAmount total_supply_ = 0;
  std::uint64_t next_escrow_ = 0;
};

} // namespace proofchain
