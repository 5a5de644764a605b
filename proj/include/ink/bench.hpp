#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ink/config.hpp"
#include "ink/sampler.hpp"
#include "ink/stream.hpp"

namespace ink {

enum class ExperimentKind { Runtime, Accuracy, Scalability };

ExperimentKind parse_experiment_kind(const std::string& text);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Runtime;
  std::vector<std::string> measures;     // stream-measure specs
  SampleSpec kb_spec;                    // template; seed is derived per trial
  std::vector<std::size_t> target_cycle; // optional per-KB target values (cycled)
  std::size_t trials = 1;
  std::uint64_t iterations = 1000;
  std::chrono::milliseconds per_iteration_timeout{120000};  // 2 minutes
  std::uint64_t probe_cadence = 100;
  std::string output_dir = ".";
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> sizes;        // scalability ladder (formula counts)
  double tolerance = 1.0;                // scalability convergence tolerance
  std::size_t threads = 1;
  std::int64_t sat_budget = 10'000'000;

  /// Flat key/value schema; see README for the key list.
  static ExperimentConfig from_config(const FlatConfig& cfg);
};

/// One benchmark observation (append-only; one row per probe).
struct ExperimentRecord {
  std::string measure_id;
  std::size_t kb_index;
  std::uint64_t trial_seed;
  std::uint64_t iteration;
  double value;
  std::uint64_t elapsed_micros;
  bool timeout_flag;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<std::string> files_written;
  std::string summary;  // human-readable table
};

/// Per-measure iteration/total runtime, Table-2 shaped summary. CSVs with
/// values are deterministic per master seed; wall-clock columns live in
/// *_timing.csv files which are excluded from the byte-identity guarantee.
ExperimentResult run_runtime_experiment(const ExperimentConfig& cfg);

/// Mean measured value per probe iteration across trials, with the true
/// target as a reference series (CSV + SVG, Figure-1(a)-(d) shaped).
ExperimentResult run_accuracy_experiment(const ExperimentConfig& cfg);

/// Total runtime until the estimate first lies within the tolerance of the
/// target, across a ladder of knowledge-base sizes (CSV + SVG + linear fit,
/// Figure-1(e) shaped).
ExperimentResult run_scalability_experiment(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Least-squares line fit with coefficient of determination.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_linear(const std::vector<std::pair<double, double>>& points);

/// Trial seeds derive from hash(master_seed, kb_index, measure_index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t kb_index, std::size_t measure_index);

}  // namespace ink
