#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "proofchain/types.hpp"

namespace proofchain {

// Exact computation is bounded to keep subset enumeration tractable.
inline constexpr std::size_t kMaxShapleyPlayers = 12;

// A coalition is a bitmask over player indices; `wins` is a monotone 0/1
// characteristic function with wins(0) == false.
using CoalitionWins = std::function<bool(std::uint32_t)>;

// Exact Shapley values as fractions over a common denominator of n!.
struct ShapleyShares {
  std::vector<std::uint64_t> numerators; // per player
  std::uint64_t denominator = 1;         // n!
};

// Subset-sum formula: the numerator of player i is the sum of
// |S|! * (n-1-|S|)! over coalitions S (i not in S) where adding i turns a
// losing coalition into a winning one. Throws TooManyPlayers past the bound
// and TargetUnprovenByGrandCoalition when even the full coalition loses.
ShapleyShares shapley_shares(std::size_t players, const CoalitionWins &wins);

// Integer payouts for distributing `amount` by exact Shapley shares,
// largest-remainder rounded; leftover units go to the lowest player index on
// remainder ties. Sums to `amount` exactly.
std::vector<TokenAmount> shapley_amounts(TokenAmount amount, const ShapleyShares &shares);

std::uint64_t factorial(std::size_t n); // n <= 20

} // namespace proofchain
