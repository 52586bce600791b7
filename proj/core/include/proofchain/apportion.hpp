#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "proofchain/types.hpp"

namespace proofchain {

// Splits `amount` into integer shares proportional to `weights` using the
// largest-remainder rule: each party gets floor(amount * w_i / W), and the
// leftover units go to the largest fractional remainders, earliest index
// first on ties. The shares always sum to `amount` exactly.
//
// Throws PayoutMismatch when amount > 0 and all weights are zero.
std::vector<TokenAmount> apportion(TokenAmount amount,
                                   std::span<const std::uint64_t> weights);

// apportion() with unit weights.
std::vector<TokenAmount> equal_split(TokenAmount amount, std::size_t parties);

} // namespace proofchain
