#include "hopfdde/run.hpp"

#include <filesystem>
#include <fstream>
#include <algorithm>
#include <atomic>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "hopfdde/errors.hpp"
#include "hopfdde/integrator.hpp"
#include "hopfdde/report.hpp"
#include "hopfdde/svg.hpp"

namespace hopfdde {

namespace {

namespace fs = std::filesystem;

class FilesystemFailure : public Error {
 public:
  using Error::Error;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FilesystemFailure("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw FilesystemFailure("failed writing " + path.string());
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw FilesystemFailure("cannot create output directory " + dir.string() +
                            (ec ? ": " + ec.message() : std::string()));
  }
}

void write_report(const AnalysisReport& rep, const fs::path& dir) {
  const auto doc = to_json(rep);
  write_file(dir / "report.json", doc.dump(2) + "\n");
  write_file(dir / "report.csv", flatten_to_csv(doc));
}

void write_plots(const Trajectory& traj, const fs::path& dir, double s) {
  const std::size_t n = traj.states.size();
  std::vector<double> t(n), u(n), v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = traj.time(i);
    u[i] = traj.states[i].u;
    v[i] = traj.states[i].v;
    w[i] = traj.states[i].w;
  }
  std::ostringstream tag;
  tag << " (s = " << s << ")";
  write_file(dir / "waveform_u.svg", svg::line_plot("u(t)" + tag.str(), "time t", "u", t, u));
  write_file(dir / "waveform_v.svg", svg::line_plot("v(t)" + tag.str(), "time t", "v", t, v));
  write_file(dir / "waveform_w.svg", svg::line_plot("w(t)" + tag.str(), "time t", "w", t, w));
  write_file(dir / "phase_uv.svg", svg::line_plot("phase portrait u-v" + tag.str(), "u", "v", u, v));
  write_file(dir / "phase_uvw_projection.svg",
             svg::projection_plot("phase portrait u-v-w" + tag.str(), "u", "v", "w", u, v, w));
}

int run_simulate(const RunConfig& cfg, AnalysisReport& rep, const fs::path& dir) {
  const auto& opts = cfg.simulate;
  const Equilibrium& estar = rep.equilibria.back();
  if ((!opts.u0 || !opts.v0) && !estar.exists) {
    throw ConfigError(!opts.u0 ? "u0" : "v0", 0, "required when the positive equilibrium does not exist");
  }
  const double u0 = opts.u0.value_or(1.01 * estar.point.u);
  const double v0 = opts.v0.value_or(0.99 * estar.point.v);
  const HistorySpec history = HistorySpec::constant(u0, v0, opts.w0);

  SimulationSummary summary;
  summary.initial = history.initial_state(cfg.params);
  try {
    const Trajectory traj = simulate(cfg.params, history, opts.t_end, opts.steps_per_delay);
    summary.t_end = traj.t_end;
    summary.step = traj.step;
    summary.rows = traj.states.size();
    if (estar.exists) summary.metrics = cycle_metrics(traj, estar.point, opts.transient_fraction);

    std::ostringstream csv;
    csv.precision(17);
    write_trajectory_csv(csv, traj);
    write_file(dir / "trajectory.csv", csv.str());
    if (cfg.plot) write_plots(traj, dir, cfg.params.s);
  } catch (const DivergenceError& e) {
    summary.blow_up_time = e.time();
    CycleMetrics m;
    m.classification = CycleClass::Diverges;
    summary.metrics = m;
  }
  rep.simulation = summary;
  write_report(rep, dir);
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, const fs::path& dir) {
  const auto& sw = cfg.sweep;
  const std::size_t count = static_cast<std::size_t>(sw.count);
  std::vector<SweepRow> rows(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};

  // Rows are independent; each worker claims the next index and writes its own slot.
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        ModelParams p = cfg.params;
        p.field(sw.param) = sw.value(static_cast<int>(i));
        rows[i] = sweep_row(p);
        rows[i].value = sw.value(static_cast<int>(i));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  write_file(dir / "sweep.csv", sweep_csv(sw.param, rows));
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& diag) {
  try {
    const fs::path& dir = cfg.output_dir;
    prepare_output_dir(dir);
    validate(cfg.params);

    if (cfg.command == Command::Sweep) return run_sweep(cfg, dir);

    const bool with_nf = cfg.command != Command::Critical;
    AnalysisReport rep = analyze(cfg.params, with_nf);
    if (cfg.command == Command::Simulate) return run_simulate(cfg, rep, dir);
    write_report(rep, dir);
    return kExitOk;
  } catch (const FilesystemFailure& e) {
    diag << "error: " << e.what() << '\n';
    return kExitFilesystem;
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    diag << "analysis error: " << e.what() << '\n';
    return kExitAnalysis;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitAnalysis;
  }
}

}  // namespace hopfdde
