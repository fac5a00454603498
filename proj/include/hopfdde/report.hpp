#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hopfdde/cycle.hpp"
#include "hopfdde/model.hpp"
#include "hopfdde/normal_form.hpp"
#include "hopfdde/stability.hpp"

namespace hopfdde {

struct SimulationSummary {
  State initial;
  double t_end = 0.0;
  double step = 0.0;
  std::size_t rows = 0;
  std::optional<double> blow_up_time;
  std::optional<CycleMetrics> metrics;
};

struct AnalysisReport {
  ModelParams params;
  std::vector<Equilibrium> equilibria;
  Stability estar_stability = Stability::Undetermined;
  std::optional<CharCoeffs> coeffs;
  std::optional<bool> h1;
  std::optional<GCubic> g;
  std::vector<HopfCandidate> candidates;
  std::vector<std::string> rejected;
  std::optional<CriticalDelay> critical;
  std::optional<NormalForm> normal_form;
  std::optional<std::string> normal_form_error;
  std::optional<SimulationSummary> simulation;
};

/// Equilibria, (H1), G cubic, candidates and s0; the normal form at the s0
/// pair when requested and available. Never throws for a missing E*: the
/// dependent fields are simply left empty.
AnalysisReport analyze(const ModelParams& p, bool with_normal_form);

nlohmann::json to_json(const AnalysisReport& report);

/// Flattens a JSON document into `key,value` rows: nested keys joined by '.',
/// array elements by index, numbers with 17 significant digits, null empty.
std::string flatten_to_csv(const nlohmann::json& doc);

struct SweepRow {
  double value = 0.0;
  std::optional<double> s0;
  std::optional<double> chi1;
  std::optional<double> chi2;
  std::optional<Direction> direction;
};

SweepRow sweep_row(const ModelParams& p);

/// Header `param,value,s0,chi1,chi2,direction`; empty cells for absent values.
std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows);

}  // namespace hopfdde
