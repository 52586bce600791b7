#include "proofchain/contribution.hpp"

#include <set>

#include <fmt/format.h>

namespace proofchain {

namespace {

std::string trim(const std::string &text) {
  std::size_t begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos)
    return "";
  std::size_t end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string &text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string::npos ? comma : comma - start));
    if (!item.empty())
      items.push_back(item);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return items;
}

} // namespace

const char *to_string(ContributionKind kind) {
  switch (kind) {
  case ContributionKind::Conjecture: return "conjecture";
  case ContributionKind::Partial: return "partial";
  case ContributionKind::Complete: return "complete";
  case ContributionKind::Tactic: return "tactic";
  case ContributionKind::Definition: return "definition";
  }
  return "?";
}

ContributionKind parse_contribution_kind(const std::string &text) {
  if (text == "conjecture")
    return ContributionKind::Conjecture;
  if (text == "partial")
    return ContributionKind::Partial;
  if (text == "complete")
    return ContributionKind::Complete;
  if (text == "tactic")
    return ContributionKind::Tactic;
  if (text == "definition")
    return ContributionKind::Definition;
  throw ProtocolError(Errc::ParseError, fmt::format("unknown contribution kind '{}'", text));
}

ContributionBlob ContributionDoc::render() const {
  std::string premise_list;
  for (std::size_t i = 0; i < premises.size(); ++i)
    premise_list += (i ? ", " : "") + premises[i];
  std::string import_list;
  for (std::size_t i = 0; i < imports.size(); ++i)
    import_list += (i ? ", " : "") + imports[i].hex;
  return fmt::format("target: {}\nkind: {}\npremises: {}\nsignature: {}\nimports: {}\n",
                     target, to_string(kind), premise_list, signature, import_list);
}

ContributionDoc parse_contribution(const ContributionBlob &blob) {
  ContributionDoc doc;
  std::set<std::string> seen;
  bool have_target = false;
  bool have_kind = false;

  std::size_t pos = 0;
  while (pos <= blob.size()) {
    std::size_t eol = blob.find('\n', pos);
    std::string line = trim(blob.substr(pos, eol == std::string::npos ? eol : eol - pos));
    pos = eol == std::string::npos ? blob.size() + 1 : eol + 1;
    if (line.empty())
      continue;

    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ProtocolError(Errc::ParseError, fmt::format("line without key: '{}'", line));
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (!seen.insert(key).second)
      throw ProtocolError(Errc::ParseError, fmt::format("duplicate key '{}'", key));

    if (key == "target") {
      if (value.empty())
        throw ProtocolError(Errc::ParseError, "empty target");
      doc.target = value;
      have_target = true;
    } else if (key == "kind") {
      doc.kind = parse_contribution_kind(value);
      have_kind = true;
    } else if (key == "premises") {
      doc.premises = split_csv(value);
    } else if (key == "signature") {
      doc.signature = value;
    } else if (key == "imports") {
      for (const auto &item : split_csv(value))
        doc.imports.push_back(ContentAddress::parse(item));
    } else {
      throw ProtocolError(Errc::ParseError, fmt::format("unknown key '{}'", key));
    }
  }

  if (!have_target)
    throw ProtocolError(Errc::ParseError, "missing target");
  if (!have_kind)
    throw ProtocolError(Errc::ParseError, "missing kind");
  return doc;
}

} // namespace proofchain
