#include "proofchain/ledger.hpp"

#include <fmt/format.h>

namespace proofchain {

Ledger Ledger::genesis(const std::vector<std::pair<AccountId, TokenAmount>> &allocations) {
  Ledger ledger;
  for (const auto &[account, amount] : allocations) {
    if (account.empty())
      throw ProtocolError(Errc::DuplicateAccount, "empty account id in genesis");
    auto [it, inserted] = ledger.balances_.emplace(account, amount);
    if (!inserted)
      throw ProtocolError(Errc::DuplicateAccount, fmt::format("account '{}' allocated twice", account));
    ledger.total_supply_ += amount;
  }
  return ledger;
}

void Ledger::transfer(const AccountId &from, const AccountId &to, TokenAmount amount) {
  auto from_it = balances_.find(from);
  if (from_it == balances_.end())
    throw ProtocolError(Errc::UnknownAccount, fmt::format("transfer from unknown account '{}'", from));
  auto to_it = balances_.find(to);
  if (to_it == balances_.end())
    throw ProtocolError(Errc::UnknownAccount, fmt::format("transfer to unknown account '{}'", to));
  if (from_it->second < amount)
    throw ProtocolError(Errc::InsufficientBalance,
                        fmt::format("'{}' holds {} < {}", from, from_it->second, amount));
  from_it->second -= amount;
  to_it->second += amount;
}

EscrowId Ledger::escrow_lock(const AccountId &from, TokenAmount amount, std::string purpose) {
  auto from_it = balances_.find(from);
  if (from_it == balances_.end())
    throw ProtocolError(Errc::UnknownAccount, fmt::format("escrow from unknown account '{}'", from));
  if (from_it->second < amount)
    throw ProtocolError(Errc::InsufficientBalance,
                        fmt::format("'{}' holds {} < {}", from, from_it->second, amount));
  EscrowId id = fmt::format("e{}", ++next_escrow_);
  from_it->second -= amount;
  escrows_.emplace(id, Escrow{from, std::move(purpose), amount});
  return id;
}

void Ledger::escrow_release(const EscrowId &escrow, const std::vector<Payout> &payouts) {
  auto escrow_it = escrows_.find(escrow);
  if (escrow_it == escrows_.end())
    throw ProtocolError(Errc::UnknownEscrow, fmt::format("no escrow '{}'", escrow));

  unsigned __int128 sum = 0;
  for (const auto &[account, amount] : payouts) {
    if (!balances_.count(account))
      throw ProtocolError(Errc::UnknownAccount, fmt::format("payout to unknown account '{}'", account));
    sum += amount;
  }
  if (sum != escrow_it->second.amount)
    throw ProtocolError(Errc::PayoutMismatch,
                        fmt::format("payouts sum to {} but escrow '{}' holds {}",
                                    static_cast<std::uint64_t>(sum), escrow, escrow_it->second.amount));

  for (const auto &[account, amount] : payouts)
    balances_[account] += amount;
  escrows_.erase(escrow_it);
}

bool Ledger::has_account(const AccountId &account) const { return balances_.count(account) > 0; }

TokenAmount Ledger::balance(const AccountId &account) const {
  auto it = balances_.find(account);
  if (it == balances_.end())
    throw ProtocolError(Errc::UnknownAccount, fmt::format("unknown account '{}'", account));
  return it->second;
}

TokenAmount Ledger::escrowed(const EscrowId &escrow) const {
  auto it = escrows_.find(escrow);
  if (it == escrows_.end())
    throw ProtocolError(Errc::UnknownEscrow, fmt::format("no escrow '{}'", escrow));
  return it->second.amount;
}

TokenAmount Ledger::escrowed_total() const {
  TokenAmount total = 0;
  for (const auto &[id, escrow] : escrows_)
    total += escrow.amount;
  return total;
}

bool Ledger::conserved() const {
  unsigned __int128 sum = 0;
  for (const auto &[account, amount] : balances_)
    sum += amount;
  for (const auto &[id, escrow] : escrows_)
    sum += escrow.amount;
  return sum == total_supply_;
}

void Ledger::unchecked_credit(const AccountId &account, TokenAmount amount) {
  balances_[account] += amount;
}

} // namespace proofchain
