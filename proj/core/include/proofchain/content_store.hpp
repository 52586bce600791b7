#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>

#include "proofchain/errors.hpp"

namespace proofchain {

// Lowercase-hex SHA-256 digest of a blob's canonical bytes. Stands in for a
// decentralized-storage content hash.
struct ContentAddress {
  std::string hex;

  auto operator<=>(const ContentAddress &) const = default;
  bool valid() const;
  std::string short_id(std::size_t length = 10) const;

  // Accepts exactly 64 lowercase hex characters; throws ParseError otherwise.
  static ContentAddress parse(const std::string &text);
};

// Raw contribution bytes.
using ContributionBlob = std::string;

// Normalizes CRLF and lone CR line endings to LF. Applied to every blob
// before hashing and storing, so equal logical content yields equal addresses
// on any platform.
ContributionBlob canonical_blob(const ContributionBlob &raw);

ContentAddress content_address(const ContributionBlob &canonical);

// Content-addressed blob store. Accepts arbitrary bytes without semantic
// checks. Availability is a per-address flag scenarios may toggle to model
// the sole host going offline; nothing is ever deleted.
class ContentStore {
public:
  // Idempotent; returns the address of the canonicalized bytes.
  ContentAddress put(const ContributionBlob &blob);

  // Exact stored bytes. Throws NotFound when absent or currently unhosted.
  const ContributionBlob &get(const ContentAddress &address) const;

  bool contains(const ContentAddress &address) const; // present and hosted
  bool stored(const ContentAddress &address) const;   // present, ignores hosting
  void set_hosted(const ContentAddress &address, bool hosted);
  bool hosted(const ContentAddress &address) const;

  std::size_t size() const { return blobs_.size(); }

  struct Entry {
    ContributionBlob bytes;
    bool hosted = true;
  };
  const std::map<ContentAddress, Entry> &entries() const { return blobs_; }

private:
  std::map<ContentAddress, Entry> blobs_;
};

} // namespace proofchain
