#pragma once

#include <cstdint>
#include <string>

namespace proofchain {

// Opaque identifier of a protocol participant. A human or automated tool may
// operate one account; one entity == one prover.
using AccountId = std::string;

// Indivisible token units. No fractional tokens exist at rest; every split is
// resolved to integers by largest-remainder apportionment.
using TokenAmount = std::uint64_t;

// Identifier of a statement (conjecture/theorem) in the proof graph.
using StatementId = std::string;

// Logical simulation time. All deadlines are tick counts.
using Tick = std::uint64_t;

// The reserved axiom: every completed proof bottoms out here.
inline constexpr const char *kAxiomStatement = "True";

} // namespace proofchain
