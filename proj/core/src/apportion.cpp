#include "proofchain/apportion.hpp"

#include <algorithm>
#include <numeric>

#include "proofchain/errors.hpp"

namespace proofchain {

std::vector<TokenAmount> apportion(TokenAmount amount,
                                   std::span<const std::uint64_t> weights) {
  std::vector<TokenAmount> shares(weights.size(), 0);
  if (weights.empty()) {
    if (amount != 0)
      throw ProtocolError(Errc::PayoutMismatch, "cannot apportion among zero parties");
    return shares;
  }

  unsigned __int128 total_weight = 0;
  for (auto w : weights)
    total_weight += w;
  if (total_weight == 0) {
    if (amount != 0)
      throw ProtocolError(Errc::PayoutMismatch, "cannot apportion with zero total weight");
    return shares;
  }

  TokenAmount distributed = 0;
  std::vector<unsigned __int128> remainders(weights.size(), 0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    unsigned __int128 scaled = static_cast<unsigned __int128>(amount) * weights[i];
    shares[i] = static_cast<TokenAmount>(scaled / total_weight);
    remainders[i] = scaled % total_weight;
    distributed += shares[i];
  }

  TokenAmount leftover = amount - distributed;
  if (leftover > 0) {
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return remainders[a] > remainders[b];
    });
    for (TokenAmount u = 0; u < leftover; ++u)
      shares[order[u % order.size()]] += 1;
  }
  return shares;
}

std::vector<TokenAmount> equal_split(TokenAmount amount, std::size_t parties) {
  std::vector<std::uint64_t> weights(parties, 1);
  return apportion(amount, weights);
}

} // namespace proofchain
