#include <doctest.h>

#include <numeric>
#include <random>

#include <fmt/format.h>

#include "proofchain/incentives.hpp"
#include "proofchain/shapley.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace proofchain;
using helpers::GraphFixture;

TEST_SUITE("shapley") {
  TEST_CASE("unanimity game splits equally") {
    auto wins = [](std::uint32_t mask) { return mask == 0b111; };
    ShapleyShares shares = shapley_shares(3, wins);
    CHECK(shares.denominator == 6);
    CHECK(shares.numerators == std::vector<std::uint64_t>{2, 2, 2});
    CHECK(shapley_amounts(300, shares) == std::vector<TokenAmount>{100, 100, 100});
  }

  TEST_CASE("solo-or-pair game: a=2/3, b=c=1/6") {
    // player 0 wins alone; players {1,2} win together
    auto wins = [](std::uint32_t mask) {
      return (mask & 0b001) != 0 || (mask & 0b110) == 0b110;
    };
    ShapleyShares shares = shapley_shares(3, wins);
    // raw values over 3! = 6: 4/6, 1/6, 1/6
    CHECK(shares.numerators == std::vector<std::uint64_t>{4, 1, 1});
    CHECK(shapley_amounts(600, shares) == std::vector<TokenAmount>{400, 100, 100});
  }

  TEST_CASE("dummy players get zero") {
    // player 2 never changes the outcome
    auto wins = [](std::uint32_t mask) { return (mask & 0b011) == 0b011; };
    ShapleyShares shares = shapley_shares(3, wins);
    CHECK(shares.numerators[2] == 0);
    CHECK(shapley_amounts(100, shares) == std::vector<TokenAmount>{50, 50, 0});
  }

  TEST_CASE("bounds") {
    auto wins = [](std::uint32_t mask) { return mask != 0; };
    CHECK_THROWS_AS(shapley_shares(13, wins), ProtocolError);
    auto lose = [](std::uint32_t) { return false; };
    try {
      shapley_shares(3, lose);
      FAIL("expected TargetUnprovenByGrandCoalition");
    } catch (const ProtocolError &error) {
      CHECK(error.code() == Errc::TargetUnprovenByGrandCoalition);
    }
  }

  TEST_CASE("subset formula equals permutation enumeration for n <= 8") {
    std::mt19937_64 rng(60321);
    for (int round = 0; round < 200; ++round) {
      std::size_t players = 1 + rng() % 8;
      auto wins = oracles::random_monotone_game(rng, players);
      ShapleyShares shares = shapley_shares(players, wins);
      std::vector<std::uint64_t> pivots = oracles::shapley_by_permutations(players, wins);
      REQUIRE(shares.denominator == factorial(players));
      REQUIRE(shares.numerators == pivots);
    }
  }

  TEST_CASE("axioms on random monotone games") {
    std::mt19937_64 rng(948);
    for (int round = 0; round < 300; ++round) {
      std::size_t players = 1 + rng() % 6;
      auto wins = oracles::random_monotone_game(rng, players);
      ShapleyShares shares = shapley_shares(players, wins);

      // efficiency: raw values sum to v(N) = 1
      REQUIRE(std::accumulate(shares.numerators.begin(), shares.numerators.end(),
                              std::uint64_t{0}) == shares.denominator);

      TokenAmount amount = rng() % 100000;
      auto amounts = shapley_amounts(amount, shares);
      TokenAmount paid = std::accumulate(amounts.begin(), amounts.end(), TokenAmount{0});
      REQUIRE(paid == amount);

      for (std::size_t i = 0; i < players; ++i) {
        // dummy axiom: never pivotal, no payout
        bool pivotal = false;
        for (std::uint32_t mask = 0; mask < (1u << players); ++mask)
          if (!(mask & (1u << i)) && !wins(mask) && wins(mask | (1u << i)))
            pivotal = true;
        if (!pivotal)
          REQUIRE(shares.numerators[i] == 0);

        // symmetry axiom: interchangeable players get equal raw values and
        // integer payouts within one unit
        for (std::size_t j = i + 1; j < players; ++j) {
          bool interchangeable = true;
          for (std::uint32_t mask = 0; mask < (1u << players); ++mask) {
            if ((mask & (1u << i)) || (mask & (1u << j)))
              continue;
            if (wins(mask | (1u << i)) != wins(mask | (1u << j))) {
              interchangeable = false;
              break;
            }
          }
          if (interchangeable) {
            REQUIRE(shares.numerators[i] == shares.numerators[j]);
            std::uint64_t gap = amounts[i] > amounts[j] ? amounts[i] - amounts[j]
                                                        : amounts[j] - amounts[i];
            REQUIRE(gap <= 1);
          }
        }
      }
    }
  }
}

namespace {

// conjecture "goal" reduced by P to two gaps, closed by A and Q
struct AwardFixture {
  Ledger ledger;
  GraphFixture graph;
  Incentives incentives;
  ContentAddress ct00, ct01, ct02, ct03;

  AwardFixture()
      : ledger(Ledger::genesis(
            {{"C", 1000}, {"P", 200}, {"A", 200}, {"Q", 200}, {"S", 100}, {"S2", 100}})),
        incentives(ledger, graph.dag) {
    ct00 = graph.add(ContributionKind::Conjecture, "goal", {}, "C");
    ct01 = graph.add(ContributionKind::Partial, "goal", {"left", "right"}, "P", {ct00});
    ct02 = graph.add(ContributionKind::Complete, "left", {}, "A", {ct01});
    ct03 = graph.add(ContributionKind::Complete, "right", {}, "Q", {ct01});
  }

  ProofTree tree() {
    auto trees = graph.dag.proof_trees("goal");
    REQUIRE(trees.size() == 1);
    return trees[0];
  }

  TokenAmount everything() {
    TokenAmount sum = 0;
    for (const auto &[account, amount] : ledger.balances())
      sum += amount;
    return sum + ledger.escrowed_total();
  }
};

TokenAmount paid_to(const std::vector<PayoutEntry> &entries, const AccountId &account) {
  TokenAmount sum = 0;
  for (const auto &entry : entries)
    if (entry.account == account)
      sum += entry.amount;
  return sum;
}

} // namespace

TEST_SUITE("incentives") {
  TEST_CASE("allocation over a tree is a unanimity game over its authors") {
    AwardFixture fx;
    ProofTree tree = fx.tree();
    auto payouts = allocate_among(tree.key(), "goal", fx.graph.dag, 90,
                                  {AllocationPolicy::Kind::Shapley});
    // players in first-contribution order: P (partial), then A, then Q
    REQUIRE(payouts.size() == 3);
    CHECK(payouts[0] == Payout{"P", 30});
    CHECK(payouts[1] == Payout{"A", 30});
    CHECK(payouts[2] == Payout{"Q", 30});
  }

  TEST_CASE("allocation over the whole graph exposes alternative routes") {
    AwardFixture fx;
    // a second, single-author complete proof of goal
    fx.graph.add(ContributionKind::Complete, "goal", {}, "Z", {fx.ct00});
    std::vector<ContentAddress> all;
    for (const auto &[address, just] : fx.graph.dag.justifications())
      all.push_back(address);
    // Z alone proves goal; P+A+Q jointly prove it. With players ordered by
    // first contribution (P, A, Q, Z): Z is the solo winner.
    auto payouts = allocate_among(all, "goal", fx.graph.dag, 600,
                                  {AllocationPolicy::Kind::Shapley});
    REQUIRE(payouts.size() == 4);
    std::map<AccountId, TokenAmount> per_account;
    for (const auto &[account, amount] : payouts)
      per_account[account] = amount;
    CHECK(per_account["Z"] > per_account["P"]);
    CHECK(per_account["P"] == per_account["A"]);
    CHECK(per_account["A"] == per_account["Q"]);
    TokenAmount total = 0;
    for (const auto &[account, amount] : payouts)
      total += amount;
    CHECK(total == 600);
  }

  TEST_CASE("equal split policy") {
    AwardFixture fx;
    auto payouts =
        allocate_among(fx.tree().key(), "goal", fx.graph.dag, 91, {AllocationPolicy::Kind::EqualSplit});
    REQUIRE(payouts.size() == 3);
    CHECK(payouts[0] == Payout{"P", 31}); // earliest contributor takes the remainder unit
    CHECK(payouts[1] == Payout{"A", 30});
    CHECK(payouts[2] == Payout{"Q", 30});
  }

  TEST_CASE("fixed prize lifecycle") {
    AwardFixture fx;
    fx.incentives.deploy_fixed_prize("prize0", "C", "goal", 90, {"C"}, 1,
                                     {AllocationPolicy::Kind::Shapley});
    CHECK(fx.ledger.balance("C") == 910);
    CHECK(fx.ledger.escrowed_total() == 90);

    AwardResult result = fx.incentives.approve_and_award("prize0", "C", fx.tree());
    CHECK(result.paid);
    CHECK(paid_to(result.payouts, "P") == 30);
    CHECK(paid_to(result.payouts, "A") == 30);
    CHECK(paid_to(result.payouts, "Q") == 30);
    CHECK(fx.ledger.escrowed_total() == 0);
    CHECK(fx.ledger.conserved());

    try {
      fx.incentives.approve_and_award("prize0", "C", fx.tree());
      FAIL("expected AlreadyPaid");
    } catch (const ProtocolError &error) {
      CHECK(error.code() == Errc::AlreadyPaid);
    }
  }

  TEST_CASE("single contributor takes the whole prize") {
    Ledger ledger = Ledger::genesis({{"C", 100}, {"Z", 0}});
    GraphFixture graph;
    Incentives incentives(ledger, graph.dag);
    auto ct00 = graph.add(ContributionKind::Conjecture, "goal", {}, "C");
    graph.add(ContributionKind::Complete, "goal", {}, "Z", {ct00});
    incentives.deploy_fixed_prize("p", "C", "goal", 100, {"C"}, 1,
                                  {AllocationPolicy::Kind::Shapley});
    auto trees = graph.dag.proof_trees("goal");
    REQUIRE(trees.size() == 1);
    AwardResult result = incentives.approve_and_award("p", "C", trees[0]);
    CHECK(result.paid);
    CHECK(ledger.balance("Z") == 100);
  }

  TEST_CASE("multisig threshold") {
    AwardFixture fx;
    fx.incentives.deploy_fixed_prize("m", "C", "goal", 90, {"C", "P", "A"}, 2,
                                     {AllocationPolicy::Kind::EqualSplit});
    AwardResult first = fx.incentives.approve_and_award("m", "C", fx.tree());
    CHECK(!first.paid);
    CHECK(first.payouts.empty());

    try {
      fx.incentives.approve_and_award("m", "S", fx.tree());
      FAIL("expected NotSigner");
    } catch (const ProtocolError &error) {
      CHECK(error.code() == Errc::NotSigner);
    }

    // duplicate approval by the same signer does not advance the count
    AwardResult again = fx.incentives.approve_and_award("m", "C", fx.tree());
    CHECK(!again.paid);

    AwardResult second = fx.incentives.approve_and_award("m", "P", fx.tree());
    CHECK(second.paid);
    CHECK(fx.ledger.conserved());
  }

  TEST_CASE("deploy validation") {
    AwardFixture fx;
    CHECK_THROWS_AS(fx.incentives.deploy_fixed_prize("x", "C", "goal", 10, {}, 1, {}),
                    ProtocolError);
    CHECK_THROWS_AS(fx.incentives.deploy_fixed_prize("x", "C", "goal", 10, {"C"}, 0, {}),
                    ProtocolError);
    CHECK_THROWS_AS(fx.incentives.deploy_fixed_prize("x", "C", "goal", 10, {"C"}, 2, {}),
                    ProtocolError);
    CHECK_THROWS_AS(fx.incentives.deploy_fixed_prize("x", "C", "goal", 9999, {"C"}, 1, {}),
                    ProtocolError);
    fx.incentives.deploy_fixed_prize("x", "C", "goal", 10, {"C"}, 1, {});
    CHECK_THROWS_AS(fx.incentives.deploy_fixed_prize("x", "C", "goal", 10, {"C"}, 1, {}),
                    ProtocolError); // duplicate id
  }

  TEST_CASE("a tree for the wrong statement is rejected") {
    AwardFixture fx;
    fx.incentives.deploy_fixed_prize("p", "C", "left", 10, {"C"}, 1, {});
    try {
      fx.incentives.approve_and_award("p", "C", fx.tree()); // tree proves goal, not left
      FAIL("expected TreeDoesNotProveTarget");
    } catch (const ProtocolError &error) {
      CHECK(error.code() == Errc::TreeDoesNotProveTarget);
    }
  }

  TEST_CASE("halving series pays the floored geometric schedule") {
    for (TokenAmount base : {TokenAmount{1}, TokenAmount{2}, TokenAmount{7}, TokenAmount{64},
                             TokenAmount{1000}}) {
      Ledger ledger = Ledger::genesis({{"C", 4 * base}, {"W", 10}});
      GraphFixture graph;
      Incentives incentives(ledger, graph.dag);
      auto ct00 = graph.add(ContributionKind::Conjecture, "goal", {}, "C");

      incentives.deploy_halving("h", "C", "goal", base, {AllocationPolicy::Kind::EqualSplit});
      CHECK(ledger.escrowed_total() == 2 * base);

      TokenAmount cumulative = 0;
      TokenAmount expected_payment = base;
      int proofs = 0;
      // register up to 15 distinct proofs; each is a fresh one-author closure
      for (int k = 0; k < 15; ++k) {
        graph.add(ContributionKind::Complete, "goal", {}, "W", {ct00},
                  fmt::format("proof {}", k));
        const ProofTree *fresh = nullptr;
        auto trees = graph.dag.proof_trees("goal");
        for (const auto &tree : trees)
          if (!incentives.halving("h").registered.count(tree.key()))
            fresh = &tree;
        REQUIRE(fresh != nullptr);
        try {
          AwardResult result = incentives.register_halving("h", *fresh);
          cumulative += paid_to(result.payouts, "W");
          ++proofs;
          CHECK(paid_to(result.payouts, "W") == expected_payment);
          expected_payment /= 2;
        } catch (const ProtocolError &error) {
          CHECK(error.code() == Errc::SeriesClosed);
        }
      }

      // floored geometric sum, never exceeding 2x the base prize
      TokenAmount geometric = 0;
      for (TokenAmount payment = base; payment > 0; payment /= 2)
        geometric += payment;
      CHECK(cumulative == geometric);
      CHECK(cumulative <= 2 * base);

      // the books close: residue went back to the deployer, escrow empty
      const HalvingSeries &series = incentives.halving("h");
      CHECK(series.closed);
      CHECK(series.proofs_paid == static_cast<std::size_t>(proofs));
      CHECK(ledger.escrowed_total() == 0);
      CHECK(ledger.balance("C") == 4 * base - cumulative);
      CHECK(ledger.conserved());
    }
  }

  TEST_CASE("halving rejects duplicate trees") {
    AwardFixture fx;
    fx.incentives.deploy_halving("h", "C", "goal", 64, {AllocationPolicy::Kind::Shapley});
    fx.incentives.register_halving("h", fx.tree());
    try {
      fx.incentives.register_halving("h", fx.tree());
      FAIL("expected DuplicateTree");
    } catch (const ProtocolError &error) {
      CHECK(error.code() == Errc::DuplicateTree);
    }
  }

  TEST_CASE("branch stake settlement") {
    SUBCASE("single staker quarter share") {
      AwardFixture fx;
      fx.incentives.stake_branch("S", fx.ct01, 30, 1, 4);
      CHECK(fx.ledger.balance("S") == 70);
      fx.incentives.deploy_fixed_prize("p", "C", "goal", 100, {"C"}, 1,
                                       {AllocationPolicy::Kind::EqualSplit});
      AwardResult result = fx.incentives.approve_and_award("p", "C", fx.tree());
      REQUIRE(result.paid);
      // staker: floor(100/4)=25 plus the returned 30 stake
      CHECK(paid_to(result.payouts, "S") == 25 + 30);
      // contributors split 75 equally: 25 each
      CHECK(paid_to(result.payouts, "P") == 25);
      CHECK(paid_to(result.payouts, "A") == 25);
      CHECK(paid_to(result.payouts, "Q") == 25);
      CHECK(fx.ledger.balance("S") == 125);
      CHECK(fx.ledger.conserved());
    }

    SUBCASE("two stakers split pro-rata with largest remainder") {
      AwardFixture fx;
      fx.incentives.stake_branch("S", fx.ct01, 30, 1, 4);
      fx.incentives.stake_branch("S2", fx.ct01, 10, 1, 4);
      BranchSettlement settlement = fx.incentives.settle_branch(fx.ct01, fx.tree(), 100);
      REQUIRE(settlement.in_tree);
      REQUIRE(settlement.staker_shares.size() == 2);
      CHECK(settlement.staker_shares[0] == Payout{"S", 19});
      CHECK(settlement.staker_shares[1] == Payout{"S2", 6});
      // stakes returned
      CHECK(fx.ledger.balance("S") == 100);
      CHECK(fx.ledger.balance("S2") == 100);
    }

    SUBCASE("branch not in the winning tree returns stakes without a share") {
      AwardFixture fx;
      // a competing solo proof that bypasses ct01
      fx.graph.add(ContributionKind::Complete, "goal", {}, "Q", {fx.ct00}, "direct");
      auto trees = fx.graph.dag.proof_trees("goal");
      REQUIRE(trees.size() == 2);
      const ProofTree &solo =
          trees[0].choices.size() == 1 ? trees[0] : trees[1];
      REQUIRE(solo.choices.size() == 1);

      fx.incentives.stake_branch("S", fx.ct01, 30, 1, 4);
      BranchSettlement settlement = fx.incentives.settle_branch(fx.ct01, solo, 100);
      CHECK(!settlement.in_tree);
      CHECK(settlement.staker_shares.empty());
      CHECK(fx.ledger.balance("S") == 100);
      CHECK(fx.ledger.conserved());
    }

    SUBCASE("rho is fixed at the first stake") {
      AwardFixture fx;
      fx.incentives.stake_branch("S", fx.ct01, 30, 1, 4);
      fx.incentives.stake_branch("S2", fx.ct01, 10, 2, 8); // same fraction, fine
      try {
        fx.incentives.stake_branch("S2", fx.ct01, 10, 1, 2);
        FAIL("expected RhoMismatch");
      } catch (const ProtocolError &error) {
        CHECK(error.code() == Errc::RhoMismatch);
      }
    }

    SUBCASE("staking needs an existing justification") {
      AwardFixture fx;
      CHECK_THROWS_AS(fx.incentives.stake_branch("S", content_address("nope"), 5, 1, 4),
                      ProtocolError);
    }

    SUBCASE("a staked inner closure takes its share too") {
      AwardFixture fx;
      fx.incentives.stake_branch("S", fx.ct02, 40, 1, 4); // on the left closure
      fx.incentives.deploy_fixed_prize("p", "C", "goal", 100, {"C"}, 1,
                                       {AllocationPolicy::Kind::EqualSplit});
      AwardResult result = fx.incentives.approve_and_award("p", "C", fx.tree());
      REQUIRE(result.paid);
      CHECK(fx.incentives.pools().at(fx.ct02).settled);
      CHECK(fx.ledger.balance("S") == 100 + 25);
      CHECK(fx.ledger.conserved());
    }

    SUBCASE("losing branches settle with plain returns once no mechanism is live") {
      AwardFixture fx;
      // an alternative route that never completes
      ContentAddress dead_end = fx.graph.add(ContributionKind::Partial, "goal",
                                             {"never_closed"}, "Z", {fx.ct00});
      fx.incentives.stake_branch("S", dead_end, 40, 1, 2);
      fx.incentives.deploy_fixed_prize("p", "C", "goal", 100, {"C"}, 1,
                                       {AllocationPolicy::Kind::EqualSplit});
      AwardResult result = fx.incentives.approve_and_award("p", "C", fx.tree());
      REQUIRE(result.paid);
      // the prize is dead, the branch can never pay: stake comes back whole
      CHECK(fx.incentives.pools().at(dead_end).settled);
      CHECK(paid_to(result.payouts, "S") == 40);
      CHECK(fx.ledger.balance("S") == 100);
      CHECK(fx.ledger.conserved());
    }
  }

  TEST_CASE("licensing") {
    AwardFixture fx;
    RightToUse pay{RightToUse::Kind::PayToUse, 5, "A"};
    RightToUse restricted{RightToUse::Kind::RestrictedToUse, 0, ""};
    RightToUse free;

    CHECK(fx.incentives.check_and_charge_license("P", fx.ct02, free, 1) ==
          LicenseDecision::Allowed);
    CHECK(fx.incentives.check_and_charge_license("P", fx.ct02, restricted, 1) ==
          LicenseDecision::DeniedRestricted);

    CHECK(fx.incentives.check_and_charge_license("P", fx.ct02, pay, 2) ==
          LicenseDecision::Charged);
    CHECK(fx.ledger.balance("P") == 195);
    CHECK(fx.ledger.balance("A") == 205);

    // the fee is charged once per importer
    CHECK(fx.incentives.check_and_charge_license("P", fx.ct02, pay, 3) ==
          LicenseDecision::Allowed);
    CHECK(fx.ledger.balance("P") == 195);

    // a second importer pays separately
    CHECK(fx.incentives.check_and_charge_license("Q", fx.ct02, pay, 4) ==
          LicenseDecision::Charged);
    CHECK(fx.ledger.balance("Q") == 195);

    // the author importing their own priced work moves nothing
    CHECK(fx.incentives.check_and_charge_license("A", fx.ct02, pay, 5) ==
          LicenseDecision::Charged);
    CHECK(fx.ledger.balance("A") == 210);

    // an importer who cannot pay is denied, state unchanged
    RightToUse steep{RightToUse::Kind::PayToUse, 100000, "A"};
    CHECK(fx.incentives.check_and_charge_license("Q", fx.ct03, steep, 6) ==
          LicenseDecision::DeniedUnpaid);
    CHECK(fx.ledger.balance("Q") == 195);
    CHECK(fx.incentives.license_charges().size() == 3);
    CHECK(fx.ledger.conserved());
  }
}
