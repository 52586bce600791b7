#include "proofchain/report.hpp"

#include <fmt/format.h>

namespace proofchain {

namespace {

std::string join(const std::vector<std::string> &items, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i)
    out += (i ? sep : "") + items[i];
  return out;
}

} // namespace

std::string build_report(const World &world, const std::string &scenario_name) {
  const auto &labels = world.labels();
  auto label_of = [&](const ContentAddress &address) {
    auto it = labels.find(address);
    return it == labels.end() ? address.short_id() : it->second;
  };
  auto tree_label = [&](const std::vector<ContentAddress> &key) {
    std::vector<std::string> parts;
    for (const auto &address : key)
      parts.push_back(label_of(address));
    return join(parts, "+");
  };

  std::string out;
  out += "proofchain run report\n";
  out += fmt::format("scenario: {}\n", scenario_name);
  out += fmt::format("events: {}\n", world.log().entries.size());
  out += fmt::format("final_tick: {}\n", world.now());

  out += "\n[balances]\n";
  for (const auto &[account, amount] : world.ledger().balances())
    out += fmt::format("{} {}\n", account, amount);
  out += fmt::format("total_supply {}\n", world.ledger().total_supply());
  out += fmt::format("escrowed {}\n", world.ledger().escrowed_total());
  out += fmt::format("conservation {}\n", world.ledger().conserved() ? "ok" : "BROKEN");

  out += "\n[tcr]\n";
  for (const auto &[record_id, listing] : world.tcr().listings()) {
    out += fmt::format("listing {} state={} proposer={} weight={}", record_id,
                       to_string(listing.state), listing.proposer, listing.weight);
    if (listing.challenge) {
      out += fmt::format(" challenger={} include={} exclude={}", listing.challenge->challenger,
                         listing.challenge->count(VoteChoice::Include),
                         listing.challenge->count(VoteChoice::Exclude));
    }
    out.push_back('\n');
  }
  {
    std::vector<std::string> bonded;
    for (const auto &[prover, escrow] : world.tcr().bonds())
      bonded.push_back(prover);
    out += fmt::format("bonded {}\n", bonded.empty() ? "-" : join(bonded, ","));
  }

  out += "\n[statements]\n";
  for (const auto &[statement, status] : world.dag().statements())
    out += fmt::format("{} {}\n", statement,
                       status == StatementStatus::Proven ? "proven" : "open");

  out += "\n[proof_trees]\n";
  for (const auto &[statement, status] : world.dag().statements()) {
    if (statement == kAxiomStatement)
      continue;
    auto trees = world.dag().proof_trees(statement);
    if (trees.empty())
      continue;
    out += fmt::format("target {} trees={}\n", statement, trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::vector<std::string> contributors(trees[i].contributors.begin(),
                                            trees[i].contributors.end());
      out += fmt::format("  tree {} justifications={} contributors={}\n", i + 1,
                         tree_label(trees[i].key()), join(contributors, ","));
    }
  }

  out += "\n[mechanisms]\n";
  for (const auto &[id, prize] : world.incentives().fixed_prizes()) {
    out += fmt::format("fixed_prize {} target={} prize={} threshold={} paid={}", id, prize.target,
                       prize.prize, prize.threshold, prize.paid ? "yes" : "no");
    if (prize.winner)
      out += fmt::format(" winner={}", tree_label(*prize.winner));
    out.push_back('\n');
  }
  for (const auto &[id, series] : world.incentives().halvings()) {
    TokenAmount paid_total = 0;
    for (std::size_t i = 0; i < series.proofs_paid; ++i)
      paid_total += series.payment_amounts[i];
    out += fmt::format(
        "halving {} target={} base={} proofs_paid={} paid_total={} next_payment={} closed={}\n",
        id, series.target, series.base_prize, series.proofs_paid, paid_total,
        series.next_payment(), series.closed ? "yes" : "no");
  }
  for (const auto &[contribution, pool] : world.incentives().pools()) {
    std::vector<std::string> stakes;
    for (const auto &[staker, amount, escrow] : pool.stakes)
      stakes.push_back(fmt::format("{}:{}", staker, amount));
    out += fmt::format("branch_stake {} rho={}/{} settled={} stakes={}\n", label_of(contribution),
                       pool.rho_num, pool.rho_denom, pool.settled ? "yes" : "no",
                       join(stakes, ","));
  }

  out += "\n[payouts]\n";
  for (const auto &record : world.payout_records()) {
    std::vector<std::string> parts;
    for (const auto &entry : record.payouts)
      parts.push_back(fmt::format("{}+{}[{}]", entry.account, entry.amount, entry.reason));
    out += fmt::format("tick={} mechanism={} kind={}{}{} {}\n", record.at, record.mechanism,
                       record.kind,
                       record.target.empty() ? "" : fmt::format(" target={}", record.target),
                       record.tree_key.empty() ? ""
                                               : fmt::format(" tree={}", tree_label(record.tree_key)),
                       parts.empty() ? "-" : join(parts, " "));
  }

  out += "\n[licensing]\n";
  for (const auto &charge : world.incentives().license_charges())
    out += fmt::format("charge tick={} contribution={} importer={} fee={} beneficiary={}\n",
                       charge.at, label_of(charge.contribution), charge.importer, charge.fee,
                       charge.beneficiary);

  return out;
}

} // namespace proofchain
