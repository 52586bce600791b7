#include "proofchain/dot_export.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

namespace proofchain {

namespace {

std::string dot_quote(const std::string &text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

} // namespace

std::string export_dot(const ProofDag &dag, const DotOptions &options) {
  std::string out;
  out += "digraph proof_state {\n";
  out += "  rankdir=TB;\n";
  out += "  node [fontsize=10];\n";

  for (const auto &[statement, status] : dag.statements()) {
    const char *style = status == StatementStatus::Proven ? "solid" : "dotted";
    const char *extra = statement == kAxiomStatement ? ", peripheries=2" : "";
    out += fmt::format("  {} [shape=ellipse, style={}{}];\n", dot_quote(statement), style, extra);
  }

  auto label_of = [&](const ContentAddress &address) {
    auto it = options.labels.find(address);
    return it == options.labels.end() ? address.short_id() : it->second;
  };

  struct Row {
    std::string label;
    const Justification *just;
  };
  std::vector<Row> rows;
  for (const auto &[address, just] : dag.justifications())
    rows.push_back({label_of(address), &just});
  std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
    return a.label != b.label ? a.label < b.label : a.just->contribution < b.just->contribution;
  });

  for (const auto &row : rows) {
    const Justification &just = *row.just;
    std::string node = "j:" + row.label;
    bool ai = options.ai_authors.count(just.author) > 0;
    bool highlighted =
        options.highlight &&
        options.highlight->choices.count(just.target) &&
        options.highlight->choices.at(just.target) == just.contribution;
    std::string attrs = fmt::format("shape=box, label={}", dot_quote(row.label));
    if (ai)
      attrs += ", color=green3, fontcolor=green3"; // automated-tool entry
    if (highlighted)
      attrs += ", penwidth=2.0";
    out += fmt::format("  {} [{}];\n", dot_quote(node), attrs);
    out += fmt::format("  {} -> {} [arrowhead=none];\n", dot_quote(just.target), dot_quote(node));
    if (just.premises.empty()) {
      out += fmt::format("  {} -> {};\n", dot_quote(node), dot_quote(kAxiomStatement));
    } else {
      for (const auto &premise : just.premises)
        out += fmt::format("  {} -> {};\n", dot_quote(node), dot_quote(premise));
    }
  }

  out += "}\n";
  return out;
}

} // namespace proofchain
