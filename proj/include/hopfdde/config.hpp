#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hopfdde/model.hpp"

namespace hopfdde {

enum class Command { Analyze, Critical, Direction, Simulate, Sweep };
std::string_view to_string(Command c);

struct SimulateOptions {
  std::optional<double> u0;  ///< defaults to 1.01·u* when E* exists
  std::optional<double> v0;  ///< defaults to 0.99·v* when E* exists
  std::optional<double> w0;  ///< unset: consistent w(0) = u0 v0/(mu + r)
  double t_end = 1000.0;
  int steps_per_delay = 200;
  double transient_fraction = 0.5;
};

struct SweepOptions {
  std::string param;
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double value(int i) const;  ///< i-th grid point, endpoints inclusive
};

struct RunConfig {
  ModelParams params;
  Command command = Command::Analyze;
  SimulateOptions simulate;
  SweepOptions sweep;
  std::filesystem::path output_dir = ".";
  bool plot = false;
};

/// Parses a flat `key = value` document (`#` starts a comment). Unknown or
/// repeated keys, unparsable numbers, missing required keys and constraint
/// violations raise ConfigError naming the key (and line when known).
/// The delay `s` is required only for simulate and defaults to 0 otherwise.
/// output_dir and plot are not config keys; they come from the command line.
RunConfig parse_config(std::string_view text);

}  // namespace hopfdde
