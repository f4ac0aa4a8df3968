#pragma once

// Experiment runner: convergence, aliasing and timing studies for the scalar
// and periodic problems, written as CSV and log-log SVG.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlsq/chebyshev.hpp"
#include "stlsq/types.hpp"

namespace stlsq::bench {

enum class Experiment { OdeConvergence, OdeAliasing, PdeConvergence, PdeTiming, PdeErrorVsTime };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::OdeConvergence;
  /// "chebyshev", "crank_nicolson", "rk4".
  std::vector<std::string> methods;
  std::vector<std::size_t> K;
  /// Collocation size per K: "K", "K+8", "2K", "2K+3", ...
  std::vector<std::string> L_rules{"K"};
  /// Step counts for the time steppers over [-1, 1].
  std::vector<std::size_t> steps;

  // Scalar problem.
  double a = 5.0;
  double omega = 20.0;
  cplx eta0 = 1.0;
  std::size_t ode_samples = 1000;

  // Periodic problem.
  int N = 16;
  std::vector<double> tau{0.5};
  double c1 = 1.0;
  double c2 = 0.5;
  double potential_amplitude = 1.0;
  double sigma = 0.0;  // 0 selects N / 8
  std::size_t samples_per_side = 16;
  std::size_t reference_steps = std::size_t{1} << 14;
  double reference_tol = 1e-9;

  double cg_tol = 1e-12;
  std::size_t cg_maxit = 0;
  TransformMode transform = TransformMode::Dense;
  std::size_t timing_repeats = 3;
  /// 0: BENCH_THREADS or hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::invalid_argument on empty lists or inconsistent values.
  void validate() const;
};

/// Parses a JSON document. With paper_scale, the optional "paper_scale"
/// object is merged over the document; without one, N becomes 64.
ExperimentConfig parse_config(std::string_view json_text, bool paper_scale = false);
ExperimentConfig load_config(const std::filesystem::path& path, bool paper_scale = false);

/// Evaluates an L rule such as "2K+8" at K.
std::size_t collocation_size(std::string_view rule, std::size_t K);

struct ConvergenceRecord {
  std::string method;
  std::size_t param = 0;  // K for chebyshev, step count for steppers
  double error = 0.0;
  std::optional<std::size_t> iterations;
  double wall_time_s = 0.0;
};

/// Records in configuration order; deterministic apart from wall times.
std::vector<ConvergenceRecord> run(const ExperimentConfig& config);

struct RunOutput {
  std::vector<ConvergenceRecord> records;
  std::filesystem::path csv;
  std::filesystem::path svg;
};

/// run() plus <experiment>.csv and <experiment>.svg in out_dir.
RunOutput run_and_write(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Header method,param,error,iterations,wall_time_s; RFC-4180 quoting, LF.
void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records);
std::vector<ConvergenceRecord> read_csv(std::istream& is);

enum class PlotAxes { ErrorVsParam, TimeVsParam, ErrorVsTime };
PlotAxes default_axes(Experiment e);
std::string render_svg(const std::vector<ConvergenceRecord>& records, PlotAxes axes,
                       std::string_view title);

/// Order p of error ~ C param^-p from a least-squares line in log-log
/// coordinates over the records with error >= floor. Throws
/// std::invalid_argument with fewer than min_points usable records.
double fit_order(const std::vector<ConvergenceRecord>& records, double floor = 1e-12,
                 std::size_t min_points = 4);

}  // namespace stlsq::bench
