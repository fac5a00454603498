#include "hopfdde/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <vector>

#include "hopfdde/errors.hpp"

namespace hopfdde {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Critical: return "critical";
    case Command::Direction: return "direction";
    case Command::Simulate: return "simulate";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

double SweepOptions::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

namespace {

constexpr std::string_view kOptionKeys[] = {"command",     "t_end",     "steps_per_delay", "transient_fraction",
                                            "sweep_param", "sweep_min", "sweep_max",       "sweep_count",
                                            "u0",          "v0",        "w0"};

bool is_known_key(std::string_view key) {
  const auto& names = ModelParams::field_names;
  return std::find(names.begin(), names.end(), key) != names.end() ||
         std::find(std::begin(kOptionKeys), std::end(kOptionKeys), key) != std::end(kOptionKeys);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

double parse_number(const std::string& key, const Entry& e) {
  double out = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  if (!e.value.empty() && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
    throw ConfigError(key, e.line, "cannot parse '" + e.value + "' as a finite number");
  }
  return out;
}

int parse_integer(const std::string& key, const Entry& e) {
  int out = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(key, e.line, "cannot parse '" + e.value + "' as an integer");
  }
  return out;
}

Command parse_command(const Entry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (v == "analyze") return Command::Analyze;
  if (v == "critical") return Command::Critical;
  if (v == "direction") return Command::Direction;
  if (v == "simulate") return Command::Simulate;
  if (v == "sweep") return Command::Sweep;
  throw ConfigError("command", e.line,
                    "unknown command '" + e.value + "' (expected analyze, critical, direction, simulate or sweep)");
}

std::string constraint_text(std::string_view name) {
  if (name == "mu" || name == "s") return "must be finite and non-negative";
  if (name == "b1" || name == "b2") return "must be finite";
  return "must be finite and positive";
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
    if (!is_known_key(key)) throw ConfigError(key, line_no, "unknown key");
    if (entries.count(key)) throw ConfigError(key, line_no, "repeated key (first set on line " +
                                                                std::to_string(entries[key].line) + ")");
    if (value.empty()) throw ConfigError(key, line_no, "missing value");
    entries.emplace(key, Entry{value, line_no});
  }

  RunConfig cfg;
  const auto find = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  std::optional<Command> command;
  if (const Entry* e = find("command")) command = parse_command(*e);

  std::string swept;
  if (command == Command::Sweep) {
    if (const Entry* e = find("sweep_param")) swept = e->value;
  }

  std::vector<std::string> missing;
  if (!command) missing.emplace_back("command");
  for (auto name : ModelParams::field_names) {
    // The delay only enters simulations; the analyses are delay independent.
    const bool optional = name == swept || (name == "s" && command && *command != Command::Simulate);
    if (!find(std::string(name)) && !optional) missing.emplace_back(name);
  }
  if (command == Command::Sweep) {
    for (const char* key : {"sweep_param", "sweep_min", "sweep_max", "sweep_count"}) {
      if (!find(key)) missing.emplace_back(key);
    }
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& k : missing) joined += (joined.empty() ? "" : ", ") + k;
    throw ConfigError(joined, 0, "missing required key(s)");
  }
  cfg.command = *command;

  for (auto name : ModelParams::field_names) {
    if (const Entry* e = find(std::string(name))) cfg.params.field(name) = parse_number(std::string(name), *e);
  }

  auto& sim = cfg.simulate;
  if (const Entry* e = find("t_end")) {
    sim.t_end = parse_number("t_end", *e);
    if (!(sim.t_end > 0.0)) throw ConfigError("t_end", e->line, "must be positive");
  }
  if (const Entry* e = find("steps_per_delay")) {
    sim.steps_per_delay = parse_integer("steps_per_delay", *e);
    if (sim.steps_per_delay < 20) throw ConfigError("steps_per_delay", e->line, "must be at least 20");
  }
  if (const Entry* e = find("transient_fraction")) {
    sim.transient_fraction = parse_number("transient_fraction", *e);
    if (!(sim.transient_fraction > 0.0 && sim.transient_fraction < 1.0)) {
      throw ConfigError("transient_fraction", e->line, "must lie strictly between 0 and 1");
    }
  }
  if (const Entry* e = find("u0")) sim.u0 = parse_number("u0", *e);
  if (const Entry* e = find("v0")) sim.v0 = parse_number("v0", *e);
  if (const Entry* e = find("w0")) sim.w0 = parse_number("w0", *e);

  const auto check_params = [&](const ModelParams& p, const std::string& context) {
    for (const auto& name : invalid_fields(p)) {
      const Entry* e = find(name);
      throw ConfigError(name, e ? e->line : 0, constraint_text(name) + context);
    }
  };

  if (cfg.command == Command::Sweep) {
    auto& sw = cfg.sweep;
    const Entry* pe = find("sweep_param");
    const auto& names = ModelParams::field_names;
    if (std::find(names.begin(), names.end(), pe->value) == names.end()) {
      throw ConfigError("sweep_param", pe->line, "'" + pe->value + "' is not a model parameter");
    }
    sw.param = pe->value;
    sw.min = parse_number("sweep_min", *find("sweep_min"));
    sw.max = parse_number("sweep_max", *find("sweep_max"));
    sw.count = parse_integer("sweep_count", *find("sweep_count"));
    if (!(sw.min < sw.max)) throw ConfigError("sweep_min", find("sweep_min")->line, "must be less than sweep_max");
    if (sw.count < 2) throw ConfigError("sweep_count", find("sweep_count")->line, "must be at least 2");

    ModelParams probe = cfg.params;
    probe.field(sw.param) = sw.min;
    check_params(probe, " (at sweep_min)");
    probe.field(sw.param) = sw.max;
    check_params(probe, " (at sweep_max)");
    cfg.params.field(sw.param) = sw.min;
  } else {
    check_params(cfg.params, "");
  }
  return cfg;
}

}  // namespace hopfdde
