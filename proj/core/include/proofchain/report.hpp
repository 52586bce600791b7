#pragma once

#include <string>

#include "proofchain/world.hpp"

namespace proofchain {

// Deterministic plain-text run report: final balances, curation outcomes,
// proof trees with contributors, mechanism status, payouts and license
// charges. Field order is fixed and every section is sorted, so two runs of
// the same scenario produce byte-identical reports.
std::string build_report(const World &world, const std::string &scenario_name);

} // namespace proofchain
