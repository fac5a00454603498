#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hopfdde/config.hpp"
#include "hopfdde/errors.hpp"
#include "hopfdde/run.hpp"
#include "hopfdde/stability.hpp"

using namespace hopfdde;
namespace fs = std::filesystem;

namespace {

const std::string kReferenceParams =
    "a1 = 0.05\n"
    "a2 = 1.045\n"
    "b1 = 0.95\n"
    "b2 = 0.27\n"
    "mu = 2\n"
    "r = 4\n"
    "r1 = 0.5\n"
    "r2 = 0.5\n";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hopfdde_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int run_in(const std::string& doc, const fs::path& dir, bool plot = false) {
  RunConfig cfg = parse_config(doc);
  cfg.output_dir = dir;
  cfg.plot = plot;
  std::ostringstream diag;
  return run(cfg, diag);
}

/// Splits one CSV row, honouring double-quoted fields.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(HOPFDDE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse the reference document") {
  const RunConfig cfg = parse_config(kReferenceParams + "command = analyze\n");
  CHECK(cfg.command == Command::Analyze);
  CHECK(cfg.params.a1 == 0.05);
  CHECK(cfg.params.a2 == 1.045);
  CHECK(cfg.params.b1 == 0.95);
  CHECK(cfg.params.b2 == 0.27);
  CHECK(cfg.params.mu == 2.0);
  CHECK(cfg.params.r == 4.0);
  CHECK(cfg.params.r1 == 0.5);
  CHECK(cfg.params.r2 == 0.5);
  CHECK(cfg.params.s == 0.0);
}

TEST_CASE("comments, blank lines and simulate options") {
  const RunConfig cfg = parse_config("# reference\n\n" + kReferenceParams +
                                     "s = 2.02   # just past the critical delay\n"
                                     "command = Simulate\n"
                                     "t_end = 300\nsteps_per_delay = 50\ntransient_fraction = 0.4\n"
                                     "u0 = 1.1\nv0 = 0.9\nw0 = 0.2\n");
  CHECK(cfg.command == Command::Simulate);
  CHECK(cfg.params.s == 2.02);
  CHECK(cfg.simulate.t_end == 300.0);
  CHECK(cfg.simulate.steps_per_delay == 50);
  CHECK(cfg.simulate.transient_fraction == 0.4);
  CHECK(cfg.simulate.u0 == 1.1);
  CHECK(cfg.simulate.v0 == 0.9);
  CHECK(cfg.simulate.w0 == 0.2);
}

TEST_CASE("configuration errors name the key") {
  const auto key_of = [](const std::string& doc) -> std::string {
    try {
      parse_config(doc);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return "<no error>";
  };
  std::string doc = kReferenceParams + "command = analyze\n";
  CHECK(key_of("a1 = -0.1\n" + doc.substr(doc.find('\n') + 1)) == "a1");
  CHECK(key_of(doc + "colour = blue\n") == "colour");
  CHECK(key_of(doc + "r1 = 0.6\n") == "r1");
  std::string unparsable = doc;
  unparsable.replace(unparsable.find("r1 = 0.5"), 8, "r1 = fast");
  CHECK(key_of(unparsable) == "r1");
  CHECK(key_of(kReferenceParams + "command = simulate\n") == "s");
  CHECK(key_of(kReferenceParams + "s = 2\ncommand = simulate\nsteps_per_delay = 10\n") == "steps_per_delay");
  CHECK(key_of(kReferenceParams + "s = 2\ncommand = simulate\ntransient_fraction = 1\n") == "transient_fraction");
  CHECK(key_of(doc + "t_end = 0\n") == "t_end");
  CHECK(key_of(kReferenceParams + "command = dance\n") == "command");
  const std::string sweep = kReferenceParams + "command = sweep\n";
  CHECK(key_of(sweep + "sweep_param = zeta\nsweep_min = 0\nsweep_max = 1\nsweep_count = 3\n") == "sweep_param");
  CHECK(key_of(sweep + "sweep_param = b1\nsweep_min = 1\nsweep_max = 0.5\nsweep_count = 3\n") == "sweep_min");
  CHECK(key_of(sweep + "sweep_param = b1\nsweep_min = 0\nsweep_max = 1\nsweep_count = 1\n") == "sweep_count");
  CHECK(key_of(sweep + "sweep_param = a1\nsweep_min = -1\nsweep_max = 1\nsweep_count = 3\n") == "a1");

  try {
    parse_config("r1 = 0.5\nr1 = 0.6\n");
    FAIL("expected error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty document lists every missing required key") {
  try {
    parse_config("");
    FAIL("expected error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const char* key : {"command", "r1", "r2", "a1", "a2", "b1", "b2", "mu", "r"}) {
      CHECK_MESSAGE(msg.find(key) != std::string::npos, key);
    }
  }
}

TEST_CASE("analyze writes the report with s0 and direction") {
  const fs::path dir = fresh_dir("analyze");
  CHECK(run_in(kReferenceParams + "command = analyze\n", dir) == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(std::abs(doc["s0"].get<double>() - 2.015) < 1e-2);
  CHECK(doc["normal_form"]["direction"] == "supercritical");
  CHECK(doc["h1"] == true);
  CHECK(doc["equilibria"][3]["label"] == "EStar");
  CHECK(fs::exists(dir / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "trajectory.csv"));
}

TEST_CASE("report.csv round-trips report.json") {
  const fs::path dir = fresh_dir("roundtrip");
  REQUIRE(run_in(kReferenceParams + "command = analyze\n", dir) == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
  const auto rows = lines_of(slurp(dir / "report.csv"));
  REQUIRE(rows.front() == "key,value");
  std::size_t numeric = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = csv_fields(rows[i]);
    REQUIRE(f.size() == 2);
    std::string pointer;
    for (std::size_t a = 0, b; a <= f[0].size(); a = b + 1) {
      b = f[0].find('.', a);
      if (b == std::string::npos) b = f[0].size();
      pointer += "/" + f[0].substr(a, b - a);
    }
    const auto& value = doc.at(nlohmann::json::json_pointer(pointer));
    if (value.is_number_float()) {
      double parsed = 0.0;
      const auto res = std::from_chars(f[1].data(), f[1].data() + f[1].size(), parsed);
      REQUIRE(res.ec == std::errc{});
      CHECK(parsed == value.get<double>());
      ++numeric;
    } else if (value.is_null()) {
      CHECK(f[1].empty());
    } else if (value.is_string()) {
      CHECK(f[1] == value.get<std::string>());
    }
  }
  CHECK(numeric > 30);
}

TEST_CASE("simulate with plots writes five SVGs and every trajectory row") {
  const fs::path dir = fresh_dir("simulate");
  // h = 2.02 / 200, so t_end = 202 is exactly 20000 steps.
  const std::string doc = kReferenceParams + "s = 2.02\ncommand = simulate\nt_end = 202\nsteps_per_delay = 200\n";
  CHECK(run_in(doc, dir, true) == kExitOk);
  for (const char* name : {"waveform_u.svg", "waveform_v.svg", "waveform_w.svg", "phase_uv.svg",
                           "phase_uvw_projection.svg"}) {
    REQUIRE_MESSAGE(fs::exists(dir / name), name);
    const std::string svg = slurp(dir / name);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("width=\"800\"") != std::string::npos);
    CHECK(svg.find("height=\"600\"") != std::string::npos);
  }
  CHECK(slurp(dir / "waveform_u.svg").find(">time t<") != std::string::npos);
  const auto rows = lines_of(slurp(dir / "trajectory.csv"));
  CHECK(rows.front() == "t,u,v,w");
  CHECK(rows.size() == 20000 + 2);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["simulation"]["rows"] == 20001);
}

TEST_CASE("identical configs give byte-identical outputs") {
  const std::string doc = kReferenceParams + "s = 2.02\ncommand = simulate\nt_end = 150\nsteps_per_delay = 40\n";
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  REQUIRE(run_in(doc, a) == kExitOk);
  REQUIRE(run_in(doc, b) == kExitOk);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("sweep without a positive equilibrium leaves s0 empty") {
  const fs::path dir = fresh_dir("sweep_degenerate");
  const std::string doc = kReferenceParams + "command = sweep\nsweep_param = b1\nsweep_min = 1.1\n"
                          "sweep_max = 1.5\nsweep_count = 5\n";
  CHECK(run_in(doc, dir) == kExitOk);
  const auto rows = lines_of(slurp(dir / "sweep.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "param,value,s0,chi1,chi2,direction");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = csv_fields(rows[i]);
    REQUIRE(f.size() == 6);
    CHECK(f[0] == "b1");
    CHECK(f[2].empty());
  }
}

TEST_CASE("sweep rows are ordered and s0 matches a direct recomputation") {
  const fs::path dir = fresh_dir("sweep");
  const std::string doc = kReferenceParams + "command = sweep\nsweep_param = b2\nsweep_min = 0.1\n"
                          "sweep_max = 0.5\nsweep_count = 9\n";
  REQUIRE(run_in(doc, dir) == kExitOk);
  const auto rows = lines_of(slurp(dir / "sweep.csv"));
  REQUIRE(rows.size() == 10);
  RunConfig cfg = parse_config(doc);
  for (int i = 0; i < 9; ++i) {
    const auto f = csv_fields(rows[i + 1]);
    double value = 0.0;
    std::from_chars(f[1].data(), f[1].data() + f[1].size(), value);
    CHECK(value == doctest::Approx(cfg.sweep.value(i)).epsilon(1e-15));
    ModelParams p = cfg.params;
    p.b2 = value;
    const auto crit = s0(p);
    if (crit) {
      double got = 0.0;
      std::from_chars(f[2].data(), f[2].data() + f[2].size(), got);
      CHECK(got == crit->s0);
    } else {
      CHECK(f[2].empty());
    }
  }
}

TEST_CASE("unwritable output directory exits with the filesystem status") {
  const fs::path dir = fresh_dir("unwritable");
  std::ofstream(dir / "plain_file") << "x";
  CHECK(run_in(kReferenceParams + "command = analyze\n", dir / "plain_file" / "sub") == kExitFilesystem);
}

TEST_CASE("command-line binary exit statuses") {
  const fs::path dir = fresh_dir("binary");
  std::ofstream(dir / "good.cfg") << kReferenceParams << "command = analyze\n";
  std::ofstream(dir / "bad.cfg") << "a1 = -0.1\n";
  CHECK(run_binary((dir / "good.cfg").string() + " --output-dir " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(run_binary((dir / "bad.cfg").string()) == 1);
  CHECK(run_binary((dir / "missing.cfg").string()) == 1);
  std::ofstream(dir / "blocker") << "x";
  CHECK(run_binary((dir / "good.cfg").string() + " --output-dir " + (dir / "blocker" / "out").string()) == 2);
}
