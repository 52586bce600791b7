#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofchain/content_store.hpp"
#include "proofchain/ledger.hpp"
#include "proofchain/types.hpp"

namespace proofchain {

enum class Filetype { Conjecture, PartialProof, CompletedProof, Theorem, Definition, Tactic };

const char *to_string(Filetype filetype);
Filetype parse_filetype(const std::string &text); // MalformedRecord on unknown

// Per-contribution license. Defaults to free-to-use; only the author sets
// anything else.
struct RightToUse {
  enum class Kind { FreeToUse, RestrictedToUse, PayToUse };
  Kind kind = Kind::FreeToUse;
  TokenAmount fee = 0;   // > 0 when PayToUse
  AccountId beneficiary; // fee recipient when PayToUse

  std::string describe() const;
};

// On-chain metadata identifying one contribution: who wrote it, where the
// blob lives, and how it may be reused.
struct Record {
  std::string record_id;
  AccountId author;
  ContentAddress file;
  std::string coq_ver;
  Filetype filetype = Filetype::Conjecture;
  std::vector<ContentAddress> imports;
  RightToUse right_to_use;
  Tick submitted_at = 0;
  std::uint64_t index = 0; // insertion index; (submitted_at, index) totally orders records
};

struct RecordFilter {
  std::optional<Filetype> filetype;
  std::optional<AccountId> author;
};

// Append-only record book. Accepts any well-formed record — duplicates and
// semantic nonsense included. Validity checks live in the proof dag and
// curation in the TCR; nothing here is ever removed or mutated.
class Registry {
public:
  // Throws MalformedRecord on missing fields, a PayToUse fee of zero, or a
  // reused record id.
  const std::string &submit(Record record);

  bool has(const std::string &record_id) const;
  const Record &by_id(const std::string &record_id) const; // UnknownRecord
  // Earliest record referencing the address, if any; this record's
  // right_to_use governs imports of the contribution.
  const Record *first_for_file(const ContentAddress &address) const;

  std::vector<const Record *> list(const RecordFilter &filter = {}) const;
  std::size_t size() const { return records_.size(); }

private:
  std::vector<Record> records_;
  std::map<std::string, std::size_t> by_id_;
  std::map<ContentAddress, std::size_t> first_by_file_;
};

} // namespace proofchain
