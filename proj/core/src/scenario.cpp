#include "proofchain/scenario.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "proofchain/errors.hpp"

namespace proofchain {

namespace {

std::string trim(const std::string &text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return "";
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t bar = line.find('|', start);
    fields.push_back(trim(line.substr(start, bar == std::string::npos ? bar : bar - start)));
    if (bar == std::string::npos)
      break;
    start = bar + 1;
  }
  return fields;
}

// Parses `key=value` fields into the event's argument map. A `signature=`
// field swallows every remaining field, pipes restored.
void parse_args(ScenarioEvent &event, const std::vector<std::string> &fields, std::size_t from) {
  for (std::size_t i = from; i < fields.size(); ++i) {
    const std::string &field = fields[i];
    if (field.empty())
      continue;
    std::size_t eq = field.find('=');
    if (eq == std::string::npos)
      throw ProtocolError(Errc::ScenarioError, fmt::format("argument without '=': '{}'", field));
    std::string key = trim(field.substr(0, eq));
    std::string value = trim(field.substr(eq + 1));
    if (key == "signature") {
      for (std::size_t j = i + 1; j < fields.size(); ++j)
        value += " | " + fields[j];
      event.args[key] = std::move(value);
      return;
    }
    if (!event.args.emplace(std::move(key), std::move(value)).second)
      throw ProtocolError(Errc::ScenarioError, fmt::format("duplicate argument in '{}'", field));
  }
}

TcrParams parse_tcr_params(const std::vector<std::string> &fields) {
  TcrParams params;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    if (fields[i].empty())
      continue;
    std::size_t eq = fields[i].find('=');
    if (eq == std::string::npos)
      throw ProtocolError(Errc::ScenarioError, fmt::format("bad tcr field '{}'", fields[i]));
    std::string key = trim(fields[i].substr(0, eq));
    std::string value = trim(fields[i].substr(eq + 1));
    if (key == "min_bond")
      params.min_bond = parse_number(value);
    else if (key == "inclusion_stake")
      params.inclusion_stake = parse_number(value);
    else if (key == "dispute_stake")
      params.dispute_stake = parse_number(value);
    else if (key == "delay_period")
      params.delay_period = parse_number(value);
    else if (key == "vote_period")
      params.vote_period = parse_number(value);
    else if (key == "challenger_share")
      std::tie(params.challenger_share_num, params.challenger_share_denom) =
          parse_fraction(value);
    else
      throw ProtocolError(Errc::ScenarioError, fmt::format("unknown tcr parameter '{}'", key));
  }
  params.check();
  return params;
}

AgentDecl parse_agent(const std::vector<std::string> &fields) {
  if (fields.size() < 3)
    throw ProtocolError(Errc::ScenarioError, "agent line needs a name and a kind");
  AgentDecl agent;
  agent.name = fields[1];
  if (agent.name.empty())
    throw ProtocolError(Errc::ScenarioError, "agent without a name");
  if (fields[2] == "human")
    agent.kind = AgentDecl::Kind::Human;
  else if (fields[2] == "aitool")
    agent.kind = AgentDecl::Kind::AiTool;
  else
    throw ProtocolError(Errc::ScenarioError, fmt::format("unknown agent kind '{}'", fields[2]));
  for (std::size_t i = 3; i < fields.size(); ++i) {
    if (fields[i].empty())
      continue;
    std::size_t eq = fields[i].find('=');
    if (eq == std::string::npos)
      throw ProtocolError(Errc::ScenarioError, fmt::format("bad agent field '{}'", fields[i]));
    std::string key = trim(fields[i].substr(0, eq));
    std::string value = trim(fields[i].substr(eq + 1));
    if (key == "solvable")
      agent.solvable = split_list(value);
    else if (key == "watch")
      agent.watch = split_list(value);
    else
      throw ProtocolError(Errc::ScenarioError, fmt::format("unknown agent field '{}'", key));
  }
  return agent;
}

// `signature` must render last so its pipes re-parse correctly.
std::string render_args(const std::map<std::string, std::string> &args) {
  std::string out;
  for (const auto &[key, value] : args)
    if (key != "signature")
      out += fmt::format(" | {}={}", key, value);
  auto sig = args.find("signature");
  if (sig != args.end())
    out += fmt::format(" | signature={}", sig->second);
  return out;
}

} // namespace

std::string ScenarioEvent::canonical() const {
  return fmt::format("{} | {} | {}{}", at, actor, action, render_args(args));
}

std::string AgentDecl::canonical() const {
  std::string out =
      fmt::format("agent | {} | {}", name, kind == Kind::Human ? "human" : "aitool");
  auto join = [](const std::vector<StatementId> &items) {
    std::string list;
    for (std::size_t i = 0; i < items.size(); ++i)
      list += (i ? "," : "") + items[i];
    return list;
  };
  if (!solvable.empty())
    out += fmt::format(" | solvable={}", join(solvable));
  if (!watch.empty())
    out += fmt::format(" | watch={}", join(watch));
  return out;
}

std::vector<std::string> Scenario::declaration_lines() const {
  std::vector<std::string> lines;
  if (tcr) {
    lines.push_back(fmt::format(
        "tcr | min_bond={} | inclusion_stake={} | dispute_stake={} | delay_period={} | "
        "vote_period={} | challenger_share={}/{}",
        tcr->min_bond, tcr->inclusion_stake, tcr->dispute_stake, tcr->delay_period,
        tcr->vote_period, tcr->challenger_share_num, tcr->challenger_share_denom));
  }
  for (const auto &agent : agents) {
    lines.push_back(agent.canonical());
    for (const auto &directive : agent.directives)
      lines.push_back(fmt::format("directive | {} | {}{}", agent.name, directive.action,
                                  render_args(directive.args)));
  }
  return lines;
}

ScenarioEvent parse_event_line(const std::string &line) {
  std::vector<std::string> fields = split_fields(line);
  if (fields.size() < 3)
    throw ProtocolError(Errc::ScenarioError, fmt::format("event needs tick, actor, action: '{}'", line));
  ScenarioEvent event;
  event.at = parse_number(fields[0]);
  event.actor = fields[1];
  event.action = fields[2];
  if (event.actor.empty() || event.action.empty())
    throw ProtocolError(Errc::ScenarioError, fmt::format("event needs an actor and action: '{}'", line));
  parse_args(event, fields, 3);
  return event;
}

Scenario parse_scenario_text(const std::string &text, const std::string &name) {
  Scenario scenario;
  scenario.name = name;

  std::istringstream stream(text);
  std::string raw;
  std::size_t line_no = 0;
  bool saw_event = false;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#')
      continue;
    try {
      std::vector<std::string> fields = split_fields(line);
      const std::string &head = fields[0];
      if (head == "tcr") {
        if (scenario.tcr)
          throw ProtocolError(Errc::ScenarioError, "tcr parameters declared twice");
        if (saw_event)
          throw ProtocolError(Errc::ScenarioError, "tcr parameters must precede events");
        scenario.tcr = parse_tcr_params(fields);
      } else if (head == "agent") {
        if (saw_event)
          throw ProtocolError(Errc::ScenarioError, "agents must be declared before events");
        AgentDecl agent = parse_agent(fields);
        for (const auto &existing : scenario.agents)
          if (existing.name == agent.name)
            throw ProtocolError(Errc::ScenarioError,
                                fmt::format("agent '{}' declared twice", agent.name));
        scenario.agents.push_back(std::move(agent));
      } else if (head == "directive") {
        if (fields.size() < 3)
          throw ProtocolError(Errc::ScenarioError, "directive needs an agent and an action");
        AgentDecl *agent = nullptr;
        for (auto &candidate : scenario.agents)
          if (candidate.name == fields[1])
            agent = &candidate;
        if (!agent)
          throw ProtocolError(Errc::ScenarioError,
                              fmt::format("directive for undeclared agent '{}'", fields[1]));
        ScenarioEvent directive;
        directive.actor = agent->name;
        directive.action = fields[2];
        parse_args(directive, fields, 3);
        agent->directives.push_back(std::move(directive));
      } else {
        ScenarioEvent event = parse_event_line(line);
        if (!scenario.events.empty() && event.at < scenario.events.back().at)
          throw ProtocolError(Errc::ScenarioError, "event ticks must be non-decreasing");
        scenario.events.push_back(std::move(event));
        saw_event = true;
      }
    } catch (const ProtocolError &error) {
      throw ProtocolError(Errc::ScenarioError,
                          fmt::format("{}:{}: {}", name, line_no, error.what()));
    }
  }
  return scenario;
}

Scenario load_scenario(const std::string &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw ProtocolError(Errc::ScenarioError, fmt::format("cannot read scenario '{}'", path));
  std::ostringstream content;
  content << file.rdbuf();

  std::string name = path;
  std::size_t slash = name.find_last_of('/');
  if (slash != std::string::npos)
    name = name.substr(slash + 1);
  if (name.size() > 4 && name.substr(name.size() - 4) == ".scn")
    name = name.substr(0, name.size() - 4);
  return parse_scenario_text(content.str(), name);
}

const std::string &require_arg(const ScenarioEvent &event, const std::string &key) {
  auto it = event.args.find(key);
  if (it == event.args.end())
    throw ProtocolError(Errc::ScenarioError,
                        fmt::format("action '{}' needs argument '{}'", event.action, key));
  return it->second;
}

std::string arg_or(const ScenarioEvent &event, const std::string &key,
                   const std::string &fallback) {
  auto it = event.args.find(key);
  return it == event.args.end() ? fallback : it->second;
}

std::uint64_t parse_number(const std::string &text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ProtocolError(Errc::ScenarioError, fmt::format("'{}' is not a number", text));
  try {
    return std::stoull(text);
  } catch (const std::exception &) {
    throw ProtocolError(Errc::ScenarioError, fmt::format("'{}' is out of range", text));
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_fraction(const std::string &text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos)
    return {parse_number(text), 1};
  return {parse_number(trim(text.substr(0, slash))), parse_number(trim(text.substr(slash + 1)))};
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string::npos ? comma : comma - start));
    if (!item.empty())
      items.push_back(item);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return items;
}

} // namespace proofchain
