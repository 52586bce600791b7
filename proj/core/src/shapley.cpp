#include "proofchain/shapley.hpp"

#include <fmt/format.h>

#include "proofchain/apportion.hpp"
#include "proofchain/errors.hpp"

namespace proofchain {

std::uint64_t factorial(std::size_t n) {
  std::uint64_t result = 1;
  for (std::size_t i = 2; i <= n; ++i)
    result *= i;
  return result;
}

ShapleyShares shapley_shares(std::size_t players, const CoalitionWins &wins) {
  if (players == 0)
    throw ProtocolError(Errc::TargetUnprovenByGrandCoalition, "no players");
  if (players > kMaxShapleyPlayers)
    throw ProtocolError(Errc::TooManyPlayers,
                        fmt::format("{} players exceeds the exact bound of {}", players,
                                    kMaxShapleyPlayers));

  const std::uint32_t full = (1u << players) - 1;
  if (!wins(full))
    throw ProtocolError(Errc::TargetUnprovenByGrandCoalition,
                        "the grand coalition does not complete the target");

  // Cache v over all coalitions; 2^n <= 4096 evaluations.
  std::vector<char> value(std::size_t{1} << players);
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    value[mask] = wins(mask) ? 1 : 0;

  ShapleyShares shares;
  shares.numerators.assign(players, 0);
  shares.denominator = factorial(players);
  for (std::size_t i = 0; i < players; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (mask & bit)
        continue;
      if (value[mask | bit] && !value[mask]) {
        std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
        shares.numerators[i] += factorial(size) * factorial(players - 1 - size);
      } else if (!value[mask | bit] && value[mask]) {
        throw InvariantViolation("characteristic function is not monotone");
      }
    }
  }
  return shares;
}

std::vector<TokenAmount> shapley_amounts(TokenAmount amount, const ShapleyShares &shares) {
  return apportion(amount, shares.numerators);
}

} // namespace proofchain
