#include "proofchain/signature_canon.hpp"

#include <cctype>
#include <map>
#include <vector>

#include <fmt/format.h>

namespace proofchain {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<std::string> tokenize(const std::string &text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      tokens.push_back(text.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      tokens.push_back(text.substr(i, j - i));
      i = j;
    } else {
      tokens.push_back(std::string(1, c));
      ++i;
    }
  }
  return tokens;
}

bool is_binder(const std::string &token) {
  return token == "forall" || token == "exists" || token == "fun";
}

} // namespace

std::string canonicalize_signature(const std::string &signature) {
  std::vector<std::string> tokens = tokenize(signature);

  // Pass 1: walk binder sections and assign canonical names in first-binding
  // order. Within a section, identifiers count as bound variables until a ':'
  // at the current nesting level flips the rest of that level to type text.
  std::map<std::string, std::string> renames;
  std::size_t next_var = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_binder(tokens[i])) {
      ++i;
      continue;
    }
    ++i;
    int depth = 0;
    std::vector<bool> collecting_at_depth = {true};
    while (i < tokens.size()) {
      const std::string &token = tokens[i];
      if (token == "," && depth == 0)
        break;
      if (token == "(") {
        ++depth;
        collecting_at_depth.push_back(true);
      } else if (token == ")") {
        if (depth > 0) {
          --depth;
          collecting_at_depth.pop_back();
        }
      } else if (token == ":") {
        collecting_at_depth.back() = false;
      } else if (ident_start(token[0]) && collecting_at_depth.back() && !is_binder(token)) {
        if (!renames.count(token))
          renames.emplace(token, fmt::format("v{}", next_var++));
      }
      ++i;
    }
  }

  // Pass 2: rewrite every occurrence and join with single spaces.
  std::string out;
  for (const auto &token : tokens) {
    auto it = renames.find(token);
    const std::string &emit = it == renames.end() ? token : it->second;
    if (!out.empty())
      out.push_back(' ');
    out += emit;
  }
  return out;
}

} // namespace proofchain
