#pragma once

#include <iosfwd>

#include "hopfdde/config.hpp"

namespace hopfdde {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFilesystem = 2;
inline constexpr int kExitAnalysis = 3;

/// Executes one configured command, writing its files into cfg.output_dir:
///   analyze / critical / direction → report.json, report.csv
///   simulate → the report plus trajectory.csv, and with plot the five SVGs
///   sweep → sweep.csv
/// Diagnostics go to `diag`, one line per problem. Returns the exit status.
int run(const RunConfig& cfg, std::ostream& diag);

}  // namespace hopfdde
