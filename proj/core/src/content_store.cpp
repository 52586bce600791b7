#include "proofchain/content_store.hpp"

#include <array>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace proofchain {

namespace {

bool is_lower_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }

} // namespace

bool ContentAddress::valid() const {
  if (hex.size() != 64)
    return false;
  for (char c : hex)
    if (!is_lower_hex(c))
      return false;
  return true;
}

std::string ContentAddress::short_id(std::size_t length) const {
  return hex.substr(0, std::min(length, hex.size()));
}

ContentAddress ContentAddress::parse(const std::string &text) {
  ContentAddress address{text};
  if (!address.valid())
    throw ProtocolError(Errc::ParseError, fmt::format("'{}' is not a content address", text));
  return address;
}

ContributionBlob canonical_blob(const ContributionBlob &raw) {
  ContributionBlob out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < raw.size() && raw[i + 1] == '\n')
        ++i;
    } else {
      out.push_back(raw[i]);
    }
  }
  return out;
}

ContentAddress content_address(const ContributionBlob &canonical) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int digest_len = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest.data(), &digest_len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(digest_len * 2);
  static const char *alphabet = "0123456789abcdef";
  for (unsigned int i = 0; i < digest_len; ++i) {
    hex.push_back(alphabet[digest[i] >> 4]);
    hex.push_back(alphabet[digest[i] & 0x0f]);
  }
  return ContentAddress{std::move(hex)};
}

ContentAddress ContentStore::put(const ContributionBlob &blob) {
  ContributionBlob canonical = canonical_blob(blob);
  ContentAddress address = content_address(canonical);
  auto [it, inserted] = blobs_.emplace(address, Entry{std::move(canonical), true});
  if (!inserted)
    it->second.hosted = true; // re-publishing brings the content back online
  return address;
}

const ContributionBlob &ContentStore::get(const ContentAddress &address) const {
  auto it = blobs_.find(address);
  if (it == blobs_.end() || !it->second.hosted)
    throw ProtocolError(Errc::NotFound, fmt::format("no hosted blob at {}", address.short_id()));
  return it->second.bytes;
}

bool ContentStore::contains(const ContentAddress &address) const {
  auto it = blobs_.find(address);
  return it != blobs_.end() && it->second.hosted;
}

bool ContentStore::stored(const ContentAddress &address) const { return blobs_.count(address) > 0; }

void ContentStore::set_hosted(const ContentAddress &address, bool hosted) {
  auto it = blobs_.find(address);
  if (it == blobs_.end())
    throw ProtocolError(Errc::NotFound, fmt::format("no blob at {}", address.short_id()));
  it->second.hosted = hosted;
}

bool ContentStore::hosted(const ContentAddress &address) const {
  auto it = blobs_.find(address);
  if (it == blobs_.end())
    throw ProtocolError(Errc::NotFound, fmt::format("no blob at {}", address.short_id()));
  return it->second.hosted;
}

} // namespace proofchain
