#pragma once

// Test-only oracles, kept independent of the library's algorithms: provability
// by top-down recursion and by justification-subset enumeration (the library
// uses a bottom-up fixpoint), and Shapley values by full permutation
// enumeration (the library uses the subset-sum formula).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracles {

struct TestJust {
  int target = 0;
  std::vector<int> premises; // -1 stands for the True axiom
  int author = 0;
};

struct TestDag {
  int statements = 0; // statement ids 0..statements-1; -1 is the axiom
  std::vector<TestJust> justs;
};

// Top-down: a statement is provable iff some justification reduces it to
// provable premises, with the current derivation path blocked against reuse
// (a valid derivation is finite and acyclic). Exponential in the worst case.
inline bool provable_recursive(const TestDag &dag, int statement, std::set<int> &path) {
  if (statement == -1)
    return true;
  if (path.count(statement))
    return false;
  path.insert(statement);
  for (const auto &just : dag.justs) {
    if (just.target != statement)
      continue;
    bool all = true;
    for (int premise : just.premises)
      if (!provable_recursive(dag, premise, path)) {
        all = false;
        break;
      }
    if (all) {
      path.erase(statement);
      return true;
    }
  }
  path.erase(statement);
  return false;
}

inline bool provable_recursive(const TestDag &dag, int statement) {
  std::set<int> path;
  return provable_recursive(dag, statement, path);
}

// Subset enumeration: the statement is provable iff some subset of the
// justifications can be peeled in dependency order, covering the statement.
// Only usable for small justification counts (2^|J| subsets).
inline bool provable_by_subsets(const TestDag &dag, int statement) {
  std::size_t count = dag.justs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    std::set<int> derived{-1};
    std::vector<bool> used(count, false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < count; ++i) {
        if (used[i] || !(mask & (std::uint64_t{1} << i)))
          continue;
        const auto &just = dag.justs[i];
        bool ready = std::all_of(just.premises.begin(), just.premises.end(),
                                 [&](int premise) { return derived.count(premise) > 0; });
        if (ready) {
          derived.insert(just.target);
          used[i] = true;
          progress = true;
        }
      }
    }
    bool whole_subset_fired = true;
    for (std::size_t i = 0; i < count; ++i)
      if ((mask & (std::uint64_t{1} << i)) && !used[i])
        whole_subset_fired = false;
    if (whole_subset_fired && derived.count(statement))
      return true;
  }
  return false;
}

inline TestDag random_dag(std::mt19937_64 &rng, int max_statements, int max_justs) {
  TestDag dag;
  dag.statements = 1 + static_cast<int>(rng() % max_statements);
  int justs = static_cast<int>(rng() % (max_justs + 1));
  for (int j = 0; j < justs; ++j) {
    TestJust just;
    just.target = static_cast<int>(rng() % dag.statements);
    int premise_count = static_cast<int>(rng() % 4); // 0 premises == complete proof
    std::set<int> premises;
    for (int p = 0; p < premise_count; ++p) {
      int premise = static_cast<int>(rng() % (dag.statements + 1)) - 1; // may be the axiom
      if (premise != just.target)
        premises.insert(premise);
    }
    just.premises.assign(premises.begin(), premises.end());
    just.author = static_cast<int>(rng() % 5);
    dag.justs.push_back(std::move(just));
  }
  return dag;
}

// Shapley numerators over denominator n! by enumerating all permutations and
// counting, for each player, the orderings in which it is pivotal.
inline std::vector<std::uint64_t>
shapley_by_permutations(std::size_t players, const std::function<bool(std::uint32_t)> &wins) {
  std::vector<std::uint64_t> pivots(players, 0);
  std::vector<std::size_t> order(players);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::uint32_t mask = 0;
    for (std::size_t index : order) {
      bool before = wins(mask);
      mask |= 1u << index;
      if (!before && wins(mask)) {
        pivots[index] += 1;
        break; // 0/1 game: exactly one pivot per ordering once it wins
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return pivots;
}

// A random monotone 0/1 game: a union of up-sets over 1..3 random nonempty
// minimal coalitions. The grand coalition always wins.
inline std::function<bool(std::uint32_t)> random_monotone_game(std::mt19937_64 &rng,
                                                               std::size_t players) {
  std::vector<std::uint32_t> minimal;
  std::size_t count = 1 + rng() % 3;
  const std::uint32_t full = (1u << players) - 1;
  for (std::size_t i = 0; i < count; ++i)
    minimal.push_back(1u + static_cast<std::uint32_t>(rng() % full));
  return [minimal](std::uint32_t mask) {
    return std::any_of(minimal.begin(), minimal.end(),
                       [&](std::uint32_t need) { return (mask & need) == need; });
  };
}

} // namespace oracles
