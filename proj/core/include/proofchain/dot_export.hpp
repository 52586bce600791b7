#pragma once

#include <map>
#include <set>
#include <string>

#include "proofchain/proof_dag.hpp"

namespace proofchain {

struct DotOptions {
  // Justifications authored by these accounts get the automated-tool mark.
  std::set<AccountId> ai_authors;
  // Display names for contributions; addresses fall back to short hex.
  std::map<ContentAddress, std::string> labels;
  // When set, the tree's justifications are drawn with a heavier pen.
  const ProofTree *highlight = nullptr;
};

// Deterministic Graphviz rendering of the proof-progress diagram: statements
// are ellipses (dotted while open, solid once proven), each justification is
// a box joined to its target and premises, and premise-free justifications
// point at the True axiom. Byte-identical across runs for equal state.
std::string export_dot(const ProofDag &dag, const DotOptions &options = {});

} // namespace proofchain
