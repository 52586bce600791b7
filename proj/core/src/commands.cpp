#include "proofchain/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "proofchain/dot_export.hpp"
#include "proofchain/report.hpp"
#include "proofchain/scenario.hpp"
#include "proofchain/world.hpp"

namespace proofchain {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string &path, const std::string &content) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw ProtocolError(Errc::ScenarioError, fmt::format("cannot write '{}'", path));
  file << content;
}

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    return std::nullopt;
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

DotOptions dot_options(const World &world) {
  DotOptions options;
  options.ai_authors = world.ai_accounts();
  options.labels = world.labels();
  return options;
}

// Applies events up to and including `tick`, or all of them.
World world_as_of(const Scenario &scenario, std::optional<Tick> tick) {
  World world(scenario);
  for (const auto &event : scenario.events) {
    if (tick && event.at > *tick)
      break;
    world.apply(event);
  }
  return world;
}

std::string first_diff(const std::string &expected, const std::string &actual) {
  std::istringstream a(expected), b(actual);
  std::string line_a, line_b;
  std::size_t line_no = 0;
  while (true) {
    ++line_no;
    bool more_a = static_cast<bool>(std::getline(a, line_a));
    bool more_b = static_cast<bool>(std::getline(b, line_b));
    if (!more_a && !more_b)
      return "sizes differ only in trailing bytes";
    if (!more_a || !more_b || line_a != line_b)
      return fmt::format("line {}: expected '{}', got '{}'", line_no, more_a ? line_a : "<eof>",
                         more_b ? line_b : "<eof>");
  }
}

} // namespace

int cmd_run(const std::string &scenario_path, const std::string &report_path,
            const std::optional<std::string> &dot_dir) {
  try {
    Scenario scenario = load_scenario(scenario_path);
    World world(scenario);

    std::optional<Tick> previous_tick;
    auto snapshot = [&](Tick tick) {
      if (!dot_dir)
        return;
      fs::create_directories(*dot_dir);
      write_file(fmt::format("{}/tick_{:06}.dot", *dot_dir, tick),
                 export_dot(world.dag(), dot_options(world)));
    };
    for (const auto &event : scenario.events) {
      if (previous_tick && event.at != *previous_tick)
        snapshot(*previous_tick);
      world.apply(event);
      previous_tick = event.at;
    }
    if (previous_tick)
      snapshot(*previous_tick);

    write_file(report_path, build_report(world, scenario.name));
    return kExitOk;
  } catch (const InvariantViolation &error) {
    fmt::print(stderr, "proofchain run: {}\n", error.what());
    return kExitInvariantViolation;
  } catch (const std::exception &error) {
    fmt::print(stderr, "proofchain run: {}\n", error.what());
    return kExitScenarioError;
  }
}

int cmd_dot(const std::string &scenario_path, Tick tick, const std::string &out_path) {
  try {
    Scenario scenario = load_scenario(scenario_path);
    World world = world_as_of(scenario, tick);
    write_file(out_path, export_dot(world.dag(), dot_options(world)));
    return kExitOk;
  } catch (const InvariantViolation &error) {
    fmt::print(stderr, "proofchain dot: {}\n", error.what());
    return kExitInvariantViolation;
  } catch (const std::exception &error) {
    fmt::print(stderr, "proofchain dot: {}\n", error.what());
    return kExitScenarioError;
  }
}

int cmd_verify(const std::string &fixture_dir) {
  try {
    std::vector<fs::path> scenarios;
    for (const auto &entry : fs::directory_iterator(fixture_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".scn")
        scenarios.push_back(entry.path());
    std::sort(scenarios.begin(), scenarios.end());
    if (scenarios.empty()) {
      fmt::print(stderr, "proofchain verify: no scenarios under '{}'\n", fixture_dir);
      return kExitScenarioError;
    }

    std::size_t mismatches = 0;
    auto check = [&](const std::string &golden_path, const std::string &actual) {
      auto expected = read_file(golden_path);
      if (!expected) {
        fmt::print("MISSING  {}\n", golden_path);
        ++mismatches;
        return;
      }
      if (*expected != actual) {
        fmt::print("MISMATCH {} ({})\n", golden_path, first_diff(*expected, actual));
        ++mismatches;
        return;
      }
      fmt::print("OK       {}\n", golden_path);
    };

    for (const auto &path : scenarios) {
      Scenario scenario = load_scenario(path.string());
      std::string stem = (path.parent_path() / path.stem()).string();

      auto [world, log] = World::run(scenario);
      check(stem + ".report.txt", build_report(world, scenario.name));

      // every committed DOT snapshot for this scenario
      std::vector<fs::path> goldens;
      for (const auto &entry : fs::directory_iterator(path.parent_path())) {
        std::string name = entry.path().filename().string();
        std::string prefix = path.stem().string() + ".tick";
        if (entry.is_regular_file() && name.rfind(prefix, 0) == 0 &&
            entry.path().extension() == ".dot")
          goldens.push_back(entry.path());
      }
      std::sort(goldens.begin(), goldens.end());
      for (const auto &golden : goldens) {
        std::string name = golden.stem().string(); // "<stem>.tick<N>"
        Tick tick = parse_number(name.substr(name.rfind(".tick") + 5));
        World snapshot = world_as_of(scenario, tick);
        check(golden.string(), export_dot(snapshot.dag(), dot_options(snapshot)));
      }
    }

    if (mismatches) {
      fmt::print("{} file(s) diverged\n", mismatches);
      return kExitScenarioError;
    }
    return kExitOk;
  } catch (const InvariantViolation &error) {
    fmt::print(stderr, "proofchain verify: {}\n", error.what());
    return kExitInvariantViolation;
  } catch (const std::exception &error) {
    fmt::print(stderr, "proofchain verify: {}\n", error.what());
    return kExitScenarioError;
  }
}

} // namespace proofchain
