#include "proofchain/registry.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace proofchain {

const char *to_string(Filetype filetype) {
  switch (filetype) {
  case Filetype::Conjecture: return "Conjecture";
  case Filetype::PartialProof: return "PartialProof";
  case Filetype::CompletedProof: return "CompletedProof";
  case Filetype::Theorem: return "Theorem";
  case Filetype::Definition: return "Definition";
  case Filetype::Tactic: return "Tactic";
  }
  return "?";
}

Filetype parse_filetype(const std::string &text) {
  if (text == "Conjecture")
    return Filetype::Conjecture;
  if (text == "PartialProof")
    return Filetype::PartialProof;
  if (text == "CompletedProof")
    return Filetype::CompletedProof;
  if (text == "Theorem")
    return Filetype::Theorem;
  if (text == "Definition")
    return Filetype::Definition;
  if (text == "Tactic")
    return Filetype::Tactic;
  throw ProtocolError(Errc::MalformedRecord, fmt::format("unknown filetype '{}'", text));
}

std::string RightToUse::describe() const {
  switch (kind) {
  case Kind::FreeToUse: return "free";
  case Kind::RestrictedToUse: return "restricted";
  case Kind::PayToUse: return fmt::format("pay:{}:{}", fee, beneficiary);
  }
  return "?";
}

const std::string &Registry::submit(Record record) {
  if (record.record_id.empty())
    throw ProtocolError(Errc::MalformedRecord, "missing record id");
  if (record.author.empty())
    throw ProtocolError(Errc::MalformedRecord, "missing author");
  if (!record.file.valid())
    throw ProtocolError(Errc::MalformedRecord, "missing or malformed file address");
  if (record.coq_ver.empty())
    throw ProtocolError(Errc::MalformedRecord, "missing coq version");
  for (const auto &import : record.imports)
    if (!import.valid())
      throw ProtocolError(Errc::MalformedRecord, "malformed import address");
  if (record.right_to_use.kind == RightToUse::Kind::PayToUse) {
    if (record.right_to_use.fee == 0)
      throw ProtocolError(Errc::MalformedRecord, "pay-to-use fee must be positive");
    if (record.right_to_use.beneficiary.empty())
      throw ProtocolError(Errc::MalformedRecord, "pay-to-use without beneficiary");
  }
  if (by_id_.count(record.record_id))
    throw ProtocolError(Errc::MalformedRecord,
                        fmt::format("record id '{}' already submitted", record.record_id));
  if (!records_.empty() && record.submitted_at < records_.back().submitted_at)
    throw ProtocolError(Errc::MalformedRecord, "submission time went backwards");

  record.index = records_.size();
  by_id_.emplace(record.record_id, record.index);
  first_by_file_.emplace(record.file, record.index); // keeps the earliest
  records_.push_back(std::move(record));
  return records_.back().record_id;
}

bool Registry::has(const std::string &record_id) const { return by_id_.count(record_id) > 0; }

const Record &Registry::by_id(const std::string &record_id) const {
  auto it = by_id_.find(record_id);
  if (it == by_id_.end())
    throw ProtocolError(Errc::UnknownRecord, fmt::format("no record '{}'", record_id));
  return records_[it->second];
}

const Record *Registry::first_for_file(const ContentAddress &address) const {
  auto it = first_by_file_.find(address);
  return it == first_by_file_.end() ? nullptr : &records_[it->second];
}

std::vector<const Record *> Registry::list(const RecordFilter &filter) const {
  std::vector<const Record *> out;
  for (const auto &record : records_) {
    if (filter.filetype && record.filetype != *filter.filetype)
      continue;
    if (filter.author && record.author != *filter.author)
      continue;
    out.push_back(&record);
  }
  std::stable_sort(out.begin(), out.end(), [](const Record *a, const Record *b) {
    return a->submitted_at != b->submitted_at ? a->submitted_at < b->submitted_at
                                              : a->index < b->index;
  });
  return out;
}

} // namespace proofchain
