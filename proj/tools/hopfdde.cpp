// Command-line front end: hopfdde <config-path> [--output-dir DIR] [--plot]

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hopfdde/config.hpp"
#include "hopfdde/errors.hpp"
#include "hopfdde/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Delay-induced Hopf bifurcation analysis of the two-information interaction model"};
  std::string config_path;
  std::string output_dir = ".";
  bool plot = false;
  app.add_option("config", config_path, "flat key = value configuration file")->required();
  app.add_option("--output-dir", output_dir, "directory for reports, trajectories and plots");
  app.add_flag("--plot", plot, "write SVG waveform and phase plots (simulate only)");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "config error: cannot read " << config_path << '\n';
    return hopfdde::kExitConfig;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  hopfdde::RunConfig cfg;
  try {
    cfg = hopfdde::parse_config(buffer.str());
  } catch (const hopfdde::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return hopfdde::kExitConfig;
  }
  cfg.output_dir = output_dir;
  cfg.plot = plot;
  return hopfdde::run(cfg, std::cerr);
}
