#include <optional>
#include <string>

#include <CLI11.hpp>

#include "proofchain/commands.hpp"

int main(int argc, char **argv) {
  CLI::App app{"proofchain - desk-scale simulator of a collaborative proof "
               "formalization protocol"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::string dot_dir;
  std::string out_path;
  std::string fixture_dir;
  std::uint64_t tick = 0;

  CLI::App *run = app.add_subcommand("run", "run a scenario and write its report");
  run->add_option("scenario", scenario_path, "scenario file (.scn)")->required();
  run->add_option("--report", report_path, "report output path")->required();
  run->add_option("--dot-dir", dot_dir, "write per-tick proof-graph DOT snapshots here");

  CLI::App *dot = app.add_subcommand("dot", "export the proof graph as of a tick");
  dot->add_option("scenario", scenario_path, "scenario file (.scn)")->required();
  dot->add_option("--tick", tick, "snapshot tick (clamps past the final event)")->required();
  dot->add_option("--out", out_path, "DOT output path")->required();

  CLI::App *verify = app.add_subcommand("verify", "re-run fixtures and compare against goldens");
  verify->add_option("dir", fixture_dir, "directory of .scn fixtures with goldens")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return proofchain::cmd_run(scenario_path, report_path,
                               dot_dir.empty() ? std::nullopt
                                               : std::optional<std::string>(dot_dir));
  if (dot->parsed())
    return proofchain::cmd_dot(scenario_path, tick, out_path);
  return proofchain::cmd_verify(fixture_dir);
}
