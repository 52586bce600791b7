#pragma once

#include <string>
#include <vector>

#include "proofchain/content_store.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

enum class ContributionKind { Conjecture, Partial, Complete, Tactic, Definition };

const char *to_string(ContributionKind kind);
ContributionKind parse_contribution_kind(const std::string &text); // ParseError on unknown

// The declarative proof artifact carried by a blob, one `key: value`
// declaration per line:
//
//   target: <statement-id>
//   kind: conjecture|partial|complete|tactic|definition
//   premises: <id>, <id>, ...
//   signature: <canonical statement text>
//   imports: <hex-address>, ...
//
// `premises` are the new sub-conjectures a partial proof introduces (empty
// for complete proofs); `signature` feeds duplicate detection and may be
// empty; `imports` reference previously stored contributions.
struct ContributionDoc {
  StatementId target;
  ContributionKind kind = ContributionKind::Conjecture;
  std::vector<StatementId> premises;
  std::string signature;
  std::vector<ContentAddress> imports;

  bool operator==(const ContributionDoc &) const = default;

  // Canonical LF text with the fixed key order above. parse(render()) is the
  // identity.
  ContributionBlob render() const;
};

// Throws ProtocolError(ParseError) on malformed input: missing target/kind,
// unknown keys, duplicate keys, or malformed import addresses.
ContributionDoc parse_contribution(const ContributionBlob &blob);

} // namespace proofchain
