#include <random>

#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include "proofchain/content_store.hpp"
#include "proofchain/contribution.hpp"
#include "proofchain/proof_dag.hpp"
#include "proofchain/registry.hpp"
#include "proofchain/scenario.hpp"
#include "proofchain/shapley.hpp"
#include "proofchain/signature_canon.hpp"
#include "proofchain/world.hpp"

using namespace proofchain;

namespace {

struct Graph {
  ContentStore store;
  Registry registry;
  ProofDag dag;
  int next = 0;

  void add(ContributionKind kind, const StatementId &target,
           const std::vector<StatementId> &premises, const std::string &signature = "") {
    ContributionDoc doc;
    doc.target = target;
    doc.kind = kind;
    doc.premises = premises;
    doc.signature = signature;
    ContentAddress address = store.put(doc.render());
    Record record;
    record.record_id = fmt::format("r{}", next);
    record.author = fmt::format("a{}", next % 7);
    record.file = address;
    record.coq_ver = "8.12";
    record.filetype = kind == ContributionKind::Conjecture ? Filetype::Conjecture
                      : premises.empty()                   ? Filetype::CompletedProof
                                                           : Filetype::PartialProof;
    record.submitted_at = static_cast<Tick>(next);
    ++next;
    registry.submit(record);
    dag.ingest(record, store.get(address), store);
  }
};

// a deep reduction chain with alternative closures at every third level
Graph layered_graph(int depth) {
  Graph graph;
  graph.add(ContributionKind::Conjecture, "s0", {});
  for (int i = 0; i < depth; ++i) {
    graph.add(ContributionKind::Partial, fmt::format("s{}", i), {fmt::format("s{}", i + 1)},
              fmt::format("level {}", i));
    if (i % 3 == 0)
      graph.add(ContributionKind::Complete, fmt::format("s{}", i + 1), {},
                fmt::format("close {}", i));
  }
  graph.add(ContributionKind::Complete, fmt::format("s{}", depth), {}, "close last");
  return graph;
}

void BM_ContentStorePut(benchmark::State &state) {
  std::mt19937_64 rng(1);
  std::vector<std::string> blobs;
  for (int i = 0; i < 256; ++i) {
    std::string blob;
    for (std::size_t b = 0; b < static_cast<std::size_t>(state.range(0)); ++b)
      blob.push_back(static_cast<char>('a' + rng() % 26));
    blobs.push_back(std::move(blob));
  }
  ContentStore store;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.put(blobs[i++ % blobs.size()]));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ContentStorePut)->Arg(256)->Arg(4096);

void BM_SignatureCanon(benchmark::State &state) {
  std::string signature =
      "forall (a : nat) (l x : list nat), sorted x -> permutation x l -> "
      "{l' : list nat | sorted l' /\\ permutation l' (a :: l)}";
  for (auto _ : state)
    benchmark::DoNotOptimize(canonicalize_signature(signature));
}
BENCHMARK(BM_SignatureCanon);

void BM_FixpointDeepChain(benchmark::State &state) {
  Graph graph = layered_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(graph.dag.is_proven("s0"));
}
BENCHMARK(BM_FixpointDeepChain)->Arg(64)->Arg(256);

void BM_ProofTreeEnumeration(benchmark::State &state) {
  // k independent gaps, each with two alternative closures: 2^k trees
  Graph graph;
  graph.add(ContributionKind::Conjecture, "goal", {});
  std::vector<StatementId> gaps;
  for (int i = 0; i < state.range(0); ++i)
    gaps.push_back(fmt::format("g{}", i));
  graph.add(ContributionKind::Partial, "goal", gaps);
  for (const auto &gap : gaps) {
    graph.add(ContributionKind::Complete, gap, {}, "route a " + gap);
    graph.add(ContributionKind::Complete, gap, {}, "route b " + gap);
  }
  for (auto _ : state) {
    auto trees = graph.dag.proof_trees("goal");
    benchmark::DoNotOptimize(trees);
  }
  state.counters["trees"] = static_cast<double>(1u << state.range(0));
}
BENCHMARK(BM_ProofTreeEnumeration)->Arg(4)->Arg(8);

void BM_ShapleyExact(benchmark::State &state) {
  std::size_t players = static_cast<std::size_t>(state.range(0));
  const std::uint32_t full = (1u << players) - 1;
  auto wins = [full](std::uint32_t mask) { return (mask & full) == full; };
  for (auto _ : state)
    benchmark::DoNotOptimize(shapley_shares(players, wins));
}
BENCHMARK(BM_ShapleyExact)->Arg(8)->Arg(10)->Arg(12);

void BM_ScenarioRun(benchmark::State &state) {
  Scenario scenario =
      load_scenario(fmt::format("{}/merge_sort_extension.scn", PROOFCHAIN_FIXTURE_DIR));
  for (auto _ : state) {
    auto [world, log] = World::run(scenario);
    benchmark::DoNotOptimize(world.fingerprint());
  }
}
BENCHMARK(BM_ScenarioRun);

} // namespace

int main(int argc, char **argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
