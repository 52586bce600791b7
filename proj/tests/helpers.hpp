#pragma once

// Shared scaffolding for unit tests: a bundled store/registry/dag with
// one-line contribution ingestion, plus oracle-dag conversion.

#include <string>
#include <vector>

#include <fmt/format.h>

#include "proofchain/content_store.hpp"
#include "proofchain/contribution.hpp"
#include "proofchain/proof_dag.hpp"
#include "proofchain/registry.hpp"
#include "oracles.hpp"

namespace helpers {

using namespace proofchain;

struct GraphFixture {
  ContentStore store;
  Registry registry;
  ProofDag dag;
  Tick now = 1;
  int next_record = 0;

  Filetype filetype_for(ContributionKind kind) {
    switch (kind) {
    case ContributionKind::Conjecture: return Filetype::Conjecture;
    case ContributionKind::Partial: return Filetype::PartialProof;
    case ContributionKind::Complete: return Filetype::CompletedProof;
    case ContributionKind::Tactic: return Filetype::Tactic;
    case ContributionKind::Definition: return Filetype::Definition;
    }
    return Filetype::Conjecture;
  }

  Record make_record(const ContentAddress &address, ContributionKind kind,
                     const AccountId &author,
                     const std::vector<ContentAddress> &imports = {}) {
    Record record;
    record.record_id = fmt::format("r{}", next_record++);
    record.author = author;
    record.file = address;
    record.coq_ver = "8.12";
    record.filetype = filetype_for(kind);
    record.imports = imports;
    record.submitted_at = now;
    return record;
  }

  // Renders, stores, submits and ingests one contribution; bumps the clock.
  ContentAddress add(ContributionKind kind, const StatementId &target,
                     const std::vector<StatementId> &premises, const AccountId &author,
                     const std::vector<ContentAddress> &imports = {},
                     const std::string &signature = "") {
    ContributionDoc doc;
    doc.target = target;
    doc.kind = kind;
    doc.premises = premises;
    doc.signature = signature;
    doc.imports = imports;
    ContentAddress address = store.put(doc.render());
    Record record = make_record(address, kind, author, imports);
    registry.submit(record);
    dag.ingest(record, store.get(address), store);
    ++now;
    return address;
  }
};

inline std::string stmt_name(int index) {
  return index == -1 ? std::string(kAxiomStatement) : fmt::format("s{}", index);
}

// Builds a real ProofDag from an oracle TestDag through the public ingest
// path: one conjecture per statement, then one contribution per
// justification.
inline GraphFixture build_from(const oracles::TestDag &shape) {
  GraphFixture fixture;
  for (int i = 0; i < shape.statements; ++i)
    fixture.add(ContributionKind::Conjecture, stmt_name(i), {}, "setup");
  int marker = 0;
  for (const auto &just : shape.justs) {
    std::vector<StatementId> premises;
    for (int premise : just.premises)
      premises.push_back(stmt_name(premise));
    // unique signature keeps equal-shaped justifications at distinct addresses
    fixture.add(premises.empty() ? ContributionKind::Complete : ContributionKind::Partial,
                stmt_name(just.target), premises, fmt::format("a{}", just.author), {},
                fmt::format("marker {}", marker++));
  }
  return fixture;
}

} // namespace helpers
