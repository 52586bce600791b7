#include <doctest.h>

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "proofchain/report.hpp"
#include "proofchain/scenario.hpp"
#include "proofchain/world.hpp"

using namespace proofchain;

namespace {

Scenario fixture(const std::string &name) {
  return load_scenario(fmt::format("{}/{}.scn", PROOFCHAIN_FIXTURE_DIR, name));
}

TokenAmount paid_to(const World &world, const AccountId &account, const std::string &kind) {
  TokenAmount sum = 0;
  for (const auto &record : world.payout_records())
    if (record.kind == kind)
      for (const auto &entry : record.payouts)
        if (entry.account == account && entry.reason.rfind("stake_return", 0) != 0)
          sum += entry.amount;
  return sum;
}

} // namespace

TEST_SUITE("scenario_parser") {
  TEST_CASE("events, declarations, canonical round trip") {
    std::string text =
        "# comment\n"
        "tcr | min_bond=5 | inclusion_stake=7 | dispute_stake=9 | delay_period=2 | "
        "vote_period=4 | challenger_share=2/3\n"
        "agent | A | aitool | solvable=x,y | watch=z\n"
        "agent | H | human\n"
        "directive | H | bond | amount=10\n"
        "\n"
        "0 | - | genesis | alloc=A:5\n"
        "3 | A | put | name=b | target=t | kind=conjecture | signature=forall (l : list nat), "
        "{l' : list nat | sorted l' /\\ permutation l' l}\n";
    Scenario scenario = parse_scenario_text(text, "inline");
    CHECK(scenario.tcr->min_bond == 5);
    CHECK(scenario.tcr->challenger_share_num == 2);
    REQUIRE(scenario.agents.size() == 2);
    CHECK(scenario.agents[0].solvable == std::vector<StatementId>{"x", "y"});
    REQUIRE(scenario.agents[1].directives.size() == 1);
    REQUIRE(scenario.events.size() == 2);

    // the signature swallowed its pipes
    const std::string &sig = scenario.events[1].args.at("signature");
    CHECK(sig.find("| sorted l'") != std::string::npos);

    // canonical rendering parses back to the same event
    ScenarioEvent reparsed = parse_event_line(scenario.events[1].canonical());
    CHECK(reparsed.args == scenario.events[1].args);
    CHECK(reparsed.at == 3);
    CHECK(reparsed.actor == "A");
  }

  TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario_text("1 | A\n", "x"), ProtocolError);           // too short
    CHECK_THROWS_AS(parse_scenario_text("oops | A | put\n", "x"), ProtocolError);  // bad tick
    CHECK_THROWS_AS(parse_scenario_text("1 | A | put | junk\n", "x"), ProtocolError);
    CHECK_THROWS_AS(parse_scenario_text("2 | A | bond | amount=1\n1 | A | bond | amount=1\n", "x"),
                    ProtocolError); // decreasing ticks
    CHECK_THROWS_AS(parse_scenario_text("directive | G | put | name=x\n", "x"),
                    ProtocolError); // directive without agent
    CHECK_THROWS_AS(parse_scenario_text("tcr | min_bond=0\n", "x"), ProtocolError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/path.scn"), ProtocolError);
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("empty scenario gives an empty world") {
    auto [world, log] = World::run(fixture("empty"));
    CHECK(log.entries.empty());
    CHECK(world.ledger().total_supply() == 0);
    CHECK(world.dag().statements().size() == 1); // the axiom
  }

  TEST_CASE("insertion fixture: proof completed, prize split") {
    auto [world, log] = World::run(fixture("insertion_sort"));
    CHECK(world.dag().is_proven("sort_prog"));
    CHECK(world.dag().proof_trees("sort_prog").size() == 1);

    // prize 90 split by the unanimity game across P, A, Q
    CHECK(paid_to(world, "P", "fixed_prize") == 30);
    CHECK(paid_to(world, "A", "fixed_prize") == 30);
    CHECK(paid_to(world, "Q", "fixed_prize") == 30);
    CHECK(world.ledger().balance("C") == 1000 - 90);

    // every listing settled
    for (const auto &[record_id, listing] : world.tcr().listings())
      CHECK(listing.state == ListingState::Listed);

    // the automated prover logged its failed attempts
    REQUIRE(world.agents().size() == 1);
    CHECK(world.agents()[0].attempts ==
          std::vector<StatementId>{"sort_prog", "sort_prog_IH"});
    CHECK(world.ledger().conserved());
  }

  TEST_CASE("merge extension: two trees, halved second payment, staker share") {
    auto [world, log] = World::run(fixture("merge_sort_extension"));
    auto trees = world.dag().proof_trees("sort_prog");
    REQUIRE(trees.size() == 2);

    // first halving payment 64 to the insertion tree: 22/21/21 by earliest
    // contributor on the remainder unit
    CHECK(paid_to(world, "P", "halving") == 22 + 6);
    CHECK(paid_to(world, "A", "halving") == 21 + 6);
    CHECK(paid_to(world, "Q", "halving") == 21 + 6);
    // second payment 32: staker takes floor(32/4)=8, contributors split 24
    CHECK(paid_to(world, "T", "halving") == 6);
    CHECK(paid_to(world, "S", "halving") == 8);

    const HalvingSeries &series = world.incentives().halving("halve");
    CHECK(series.proofs_paid == 2);
    CHECK(!series.closed);
    CHECK(series.next_payment() == 16);

    // T paid their own tactic fee: a recorded charge, no net movement
    REQUIRE(world.incentives().license_charges().size() == 1);
    CHECK(world.incentives().license_charges()[0].importer == "T");
    CHECK(world.incentives().license_charges()[0].fee == 5);

    // the registry filters pick out exactly the tactic record
    RecordFilter tactics;
    tactics.filetype = Filetype::Tactic;
    auto tactic_records = world.registry().list(tactics);
    REQUIRE(tactic_records.size() == 1);
    CHECK(tactic_records[0]->record_id == "ct04Cont");

    // final balances reconcile
    CHECK(world.ledger().balance("C") == 1000 - 90 - 128);
    CHECK(world.ledger().balance("P") == 300 - 50 + 30 + 28);
    CHECK(world.ledger().balance("A") == 300 - 50 + 30 + 27);
    CHECK(world.ledger().balance("Q") == 300 + 30 + 27);
    CHECK(world.ledger().balance("T") == 300 - 50 + 6);
    CHECK(world.ledger().balance("S") == 120 + 8);
    CHECK(world.ledger().balance("L") == 300);
    CHECK(world.ledger().conserved());
  }

  TEST_CASE("curation fixture: duplicate flagged, spam rejected") {
    auto [world, log] = World::run(fixture("tcr_challenge"));
    CHECK(world.tcr().listing("ct00Cont").state == ListingState::Listed);
    CHECK(world.tcr().listing("spamCont").state == ListingState::Rejected);

    bool flagged = false;
    for (const auto &entry : log.entries)
      if (entry.outcome.find("duplicate of statement 'sort_prog'") != std::string::npos)
        flagged = true;
    CHECK(flagged);

    // rejection economics: X loses the inclusion stake; challenger P gets 10
    // plus a voter share, exclude voters A and P split the remainder 5/5
    CHECK(world.ledger().balance("X") == 60 - 20);
    CHECK(world.ledger().balance("P") == 100 - 50 + 10 + 5);
    CHECK(world.ledger().balance("A") == 100 - 50 + 5);
    CHECK(world.ledger().balance("T") == 100 - 50);
    CHECK(world.ledger().conserved());
  }

  TEST_CASE("licensing fixture: fees, denials, availability") {
    auto [world, log] = World::run(fixture("licensing"));
    // U paid once across two imports; V paid once; N and the restricted user
    // were denied
    CHECK(world.ledger().balance("T") == 100 - 20 + 20 + 14); // stake returned + two fees
    CHECK(world.ledger().balance("U") == 100 - 7);
    CHECK(world.ledger().balance("V") == 30 - 7);
    CHECK(world.ledger().balance("N") == 5);
    CHECK(world.incentives().license_charges().size() == 2);

    CHECK(world.dag().has_statement("ugoal"));
    CHECK(world.dag().has_statement("vgoal"));
    CHECK(!world.dag().has_statement("ngoal")); // unpaid
    CHECK(!world.dag().has_statement("wgoal")); // restricted
    CHECK(!world.dag().has_statement("xgoal")); // import vanished

    bool denied_unpaid = false, denied_restricted = false, unresolved = false;
    for (const auto &entry : log.entries) {
      if (entry.outcome.find("license fees unpaid") != std::string::npos)
        denied_unpaid = true;
      if (entry.outcome.find("is restricted") != std::string::npos)
        denied_restricted = true;
      if (entry.outcome.find("UnresolvedImport") != std::string::npos)
        unresolved = true;
    }
    CHECK(denied_unpaid);
    CHECK(denied_restricted);
    CHECK(unresolved);
    CHECK(world.ledger().conserved());
  }

  TEST_CASE("human agent walks its directives") {
    auto [world, log] = World::run(fixture("human_agent"));
    CHECK(world.dag().has_statement("human_goal"));
    CHECK(world.tcr().listing("g0Cont").state == ListingState::Listed);
    CHECK(log.entries.back().outcome.find("no directives left") != std::string::npos);
    CHECK(world.ledger().balance("H") == 100);
  }

  TEST_CASE("per-event failures are recorded, not fatal") {
    Scenario scenario = parse_scenario_text("0 | - | genesis | alloc=A:10\n"
                                            "1 | A | bond | amount=5\n"   // below min bond
                                            "2 | A | vote | record=x | choice=include\n"
                                            "3 | Z | propose | record=x\n",
                                            "errors");
    auto [world, log] = World::run(scenario);
    REQUIRE(log.entries.size() == 4);
    CHECK(log.entries[1].outcome.rfind("error BelowMinBond", 0) == 0);
    CHECK(log.entries[2].outcome.rfind("error UnknownListing", 0) == 0);
    CHECK(log.entries[3].outcome.rfind("error UnknownRecord", 0) == 0);
    CHECK(world.ledger().balance("A") == 10);
  }

  TEST_CASE("determinism: identical runs, bit-identical logs and dumps") {
    for (const char *name : {"insertion_sort", "merge_sort_extension", "tcr_challenge",
                             "licensing", "human_agent"}) {
      auto [w1, l1] = World::run(fixture(name));
      auto [w2, l2] = World::run(fixture(name));
      REQUIRE(w1.dump() == w2.dump());
      REQUIRE(l1.serialize() == l2.serialize());
    }
  }

  TEST_CASE("replay reproduces the final state for every fixture") {
    for (const char *name : {"insertion_sort", "merge_sort_extension", "tcr_challenge",
                             "licensing", "human_agent", "empty"}) {
      auto [world, log] = World::run(fixture(name));
      // through the serialized form, as a reader of the log file would
      EventLog parsed = EventLog::parse(log.serialize());
      World replayed = World::replay(parsed);
      REQUIRE(replayed.dump() == world.dump());
    }
  }

  TEST_CASE("a tampered log is detected") {
    auto [world, log] = World::run(fixture("tcr_challenge"));

    SUBCASE("flipped vote argument") {
      EventLog tampered = log;
      bool flipped = false;
      for (auto &entry : tampered.entries)
        if (!flipped && entry.event_line.find("choice=include") != std::string::npos) {
          entry.event_line.replace(entry.event_line.find("choice=include"), 14,
                                   "choice=exclude");
          flipped = true;
        }
      REQUIRE(flipped);
      CHECK_THROWS_AS(World::replay(tampered), ProtocolError);
    }
    SUBCASE("forged outcome") {
      EventLog tampered = log;
      tampered.entries[3].outcome = "ok: nothing happened";
      CHECK_THROWS_AS(World::replay(tampered), ProtocolError);
    }
    SUBCASE("forged fingerprint") {
      EventLog tampered = log;
      tampered.entries.back().fingerprint ^= 1;
      CHECK_THROWS_AS(World::replay(tampered), ProtocolError);
    }
  }

  TEST_CASE("authorship precedes payout") {
    auto [world, log] = World::run(fixture("merge_sort_extension"));
    for (const auto &record : world.payout_records()) {
      for (const auto &address : record.tree_key) {
        const Justification &just = world.dag().justification(address);
        REQUIRE(just.ingested_at <= record.at);
      }
    }
  }

  TEST_CASE("agent registration order only moves remainder units") {
    std::string base = "0 | - | genesis | alloc=C:100,A1:100,A2:100\n"
                       "1 | C | put | name=g | target=goal | kind=conjecture\n"
                       "1 | C | submit | record=gCont | file=g | filetype=Conjecture\n"
                       "1 | C | propose | record=gCont\n"
                       "2 | C | put | name=h | target=goal2 | kind=conjecture\n"
                       "2 | C | submit | record=hCont | file=h | filetype=Conjecture\n"
                       "2 | C | propose | record=hCont\n"
                       "5 | A1 | agent_step\n"
                       "5 | A2 | agent_step\n";
    std::string agents_fwd = "agent | A1 | aitool | solvable=goal | watch=goal,goal2\n"
                             "agent | A2 | aitool | solvable=goal2 | watch=goal,goal2\n";
    std::string agents_rev = "agent | A2 | aitool | solvable=goal2 | watch=goal,goal2\n"
                             "agent | A1 | aitool | solvable=goal | watch=goal,goal2\n";

    auto [w1, l1] = World::run(parse_scenario_text(agents_fwd + base, "fwd"));
    auto [w2, l2] = World::run(parse_scenario_text(agents_rev + base, "rev"));

    // both orders close both goals; balances must agree account by account
    CHECK(w1.dag().is_proven("goal"));
    CHECK(w1.dag().is_proven("goal2"));
    CHECK(w2.dag().is_proven("goal"));
    CHECK(w2.dag().is_proven("goal2"));
    for (const auto &[account, amount] : w1.ledger().balances())
      CHECK(w2.ledger().balance(account) == amount);
    CHECK(w1.ledger().escrowed_total() == w2.ledger().escrowed_total());
  }

  TEST_CASE("a record whose blob went offline is accepted but not ingested") {
    Scenario scenario = parse_scenario_text(
        "0 | - | genesis | alloc=C:100\n"
        "1 | C | put | name=g | target=goal | kind=conjecture\n"
        "2 | - | set_hosted | name=g | hosted=false\n"
        "3 | C | submit | record=gCont | file=g | filetype=Conjecture\n",
        "offline_blob");
    auto [world, log] = World::run(scenario);
    CHECK(world.registry().has("gCont")); // the registry takes any record
    CHECK(!world.dag().has_statement("goal"));
    CHECK(log.entries.back().outcome.find("contribution unavailable") != std::string::npos);
  }

  TEST_CASE("a fee to oneself still needs the balance on hand") {
    // author prices a tactic at 40, then tries to import it while holding 30:
    // the transfer would be a wash, but the fee must be coverable
    Scenario scenario = parse_scenario_text(
        "0 | - | genesis | alloc=T:30\n"
        "1 | T | put | name=tac | target=helper | kind=tactic\n"
        "1 | T | submit | record=tacCont | file=tac | filetype=Tactic | rights=pay:40:T\n"
        "2 | T | put | name=use | target=goal | kind=conjecture | imports=tac\n"
        "2 | T | submit | record=useCont | file=use | filetype=Conjecture\n",
        "self_fee");
    auto [world, log] = World::run(scenario);
    CHECK(!world.dag().has_statement("goal"));
    CHECK(log.entries.back().outcome.find("license fees unpaid") != std::string::npos);
    CHECK(world.ledger().balance("T") == 30);
  }

  TEST_CASE("an automated agent with no gaps emits nothing") {
    Scenario scenario = parse_scenario_text(
        "agent | A | aitool | solvable=goal | watch=goal\n"
        "0 | - | genesis | alloc=C:100,A:100\n"
        "1 | C | put | name=g | target=goal | kind=conjecture\n"
        "1 | C | submit | record=gCont | file=g | filetype=Conjecture\n"
        "2 | A | agent_step\n"
        "2 | A | agent_step\n",
        "idle_agent");
    auto [world, log] = World::run(scenario);
    CHECK(world.dag().is_proven("goal"));
    // the second step found nothing open and changed nothing
    CHECK(log.entries.back().outcome.find("has no gaps") != std::string::npos);
    CHECK(log.entries.back().fingerprint == log.entries[log.entries.size() - 2].fingerprint);
  }

  TEST_CASE("changed curation parameters change the report") {
    Scenario original = fixture("tcr_challenge");
    auto [w1, l1] = World::run(original);

    Scenario tweaked = original;
    tweaked.tcr->challenger_share_num = 1;
    tweaked.tcr->challenger_share_denom = 4;
    auto [w2, l2] = World::run(tweaked);
    CHECK(build_report(w1, "tcr_challenge") != build_report(w2, "tcr_challenge"));
  }

  TEST_CASE("conservation fault aborts the run") {
    Scenario scenario = load_scenario(fmt::format("{}/fault_injection.scn",
                                                  PROOFCHAIN_EXTRA_FIXTURE_DIR));
    World world(scenario);
    REQUIRE(scenario.events.size() == 2);
    world.apply(scenario.events[0]);
    CHECK_THROWS_AS(world.apply(scenario.events[1]), InvariantViolation);
  }
}
