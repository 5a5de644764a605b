#include "ink/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "ink/rng.hpp"
#include "ink/svg.hpp"

namespace ink {

namespace {

namespace fs = std::filesystem;

std::string fmt_value(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& name, std::vector<std::string>& files) {
  fs::create_directories(dir);
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  files.push_back(path);
  return out;
}

/// Deterministic record CSV (no wall-clock columns).
void write_records_csv(const std::string& dir, const std::vector<ExperimentRecord>& records,
                       std::vector<std::string>& files) {
  auto out = open_out(dir, "records.csv", files);
  out << "measure,kb_id,seed,iteration,value,timeout_flag\n";
  for (const auto& r : records) {
    out << r.measure_id << ',' << r.kb_index << ',' << r.trial_seed << ',' << r.iteration << ','
        << fmt_value(r.value) << ',' << (r.timeout_flag ? 1 : 0) << '\n';
  }
}

/// Wall-clock sibling; excluded from the byte-identity guarantee.
void write_timing_csv(const std::string& dir, const std::vector<ExperimentRecord>& records,
                      std::vector<std::string>& files) {
  auto out = open_out(dir, "records_timing.csv", files);
  out << "measure,kb_id,seed,iteration,elapsed_micros\n";
  for (const auto& r : records) {
    out << r.measure_id << ',' << r.kb_index << ',' << r.trial_seed << ',' << r.iteration << ','
        << r.elapsed_micros << '\n';
  }
}

struct Task {
  std::size_t kb_index;
  std::size_t measure_index;
};

/// Runs (kb, measure) pairs on a small worker pool. Results land in
/// preallocated slots, so assembly order never depends on scheduling.
template <typename Fn>
void run_tasks(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SampleSpec spec_for_trial(const ExperimentConfig& cfg, std::size_t kb_index) {
  SampleSpec spec = cfg.kb_spec;
  spec.seed = derive_seed(cfg.master_seed, kb_index);
  if (!cfg.target_cycle.empty() && spec.target) {
    spec.target->value = cfg.target_cycle[kb_index % cfg.target_cycle.size()];
  }
  return spec;
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "runtime") return ExperimentKind::Runtime;
  if (text == "accuracy") return ExperimentKind::Accuracy;
  if (text == "scalability") return ExperimentKind::Scalability;
  throw InvalidArgumentError("unknown experiment: " + text);
}

ExperimentConfig ExperimentConfig::from_config(const FlatConfig& cfg) {
  ExperimentConfig out;
  out.experiment = parse_experiment_kind(cfg.get_string("experiment"));
  out.measures = split_list(cfg.get_string("measures"));
  if (out.measures.empty()) throw InvalidArgumentError("config: measures list is empty");

  out.kb_spec.num_formulas = static_cast<std::size_t>(cfg.get_int("formulas", 100));
  out.kb_spec.num_atoms = static_cast<std::size_t>(cfg.get_int("atoms", 10));
  out.kb_spec.clause_length = {static_cast<std::size_t>(cfg.get_int("clause_len_min", 2)),
                               static_cast<std::size_t>(cfg.get_int("clause_len_max", 4))};
  if (cfg.has("target")) {
    const auto parts = split_list(cfg.get_string("target"), ':');
    if (parts.size() != 2) throw InvalidArgumentError("config: target must be hs:V or c:T");
    SampleTarget target;
    if (parts[0] == "hs") target.measure = TargetMeasure::Hs;
    else if (parts[0] == "c") target.measure = TargetMeasure::C;
    else throw InvalidArgumentError("config: unknown target measure " + parts[0]);
    target.value = static_cast<std::size_t>(std::stoll(parts[1]));
    out.kb_spec.target = target;
  }
  if (cfg.has("target_values")) {
    for (const auto& item : split_list(cfg.get_string("target_values"))) {
      out.target_cycle.push_back(static_cast<std::size_t>(std::stoll(item)));
    }
  }

  out.trials = static_cast<std::size_t>(cfg.get_int("trials", 1));
  out.iterations = static_cast<std::uint64_t>(cfg.get_int("iterations", 1000));
  out.per_iteration_timeout = std::chrono::milliseconds(cfg.get_int("per_iteration_timeout_ms", 120000));
  out.probe_cadence = static_cast<std::uint64_t>(cfg.get_int("probe_cadence", 100));
  out.output_dir = cfg.get_string("output_dir", ".");
  out.master_seed = static_cast<std::uint64_t>(cfg.get_int("master_seed", 0));
  out.tolerance = cfg.get_double("convergence_tolerance", 1.0);
  out.threads = static_cast<std::size_t>(cfg.get_int("threads", 1));
  out.sat_budget = cfg.get_int("sat_budget", 10'000'000);
  if (cfg.has("sizes")) {
    const auto parts = split_list(cfg.get_string("sizes"), ':');
    if (parts.size() == 3) {
      // lo:hi:step ladder
      const auto lo = std::stoll(parts[0]), hi = std::stoll(parts[1]), step = std::stoll(parts[2]);
      if (lo <= 0 || step <= 0 || hi < lo) throw InvalidArgumentError("config: bad sizes ladder");
      for (auto s = lo; s <= hi; s += step) out.sizes.push_back(static_cast<std::size_t>(s));
    } else {
      for (const auto& item : split_list(cfg.get_string("sizes"))) {
        out.sizes.push_back(static_cast<std::size_t>(std::stoll(item)));
      }
    }
  }
  if (out.trials < 1) throw InvalidArgumentError("config: trials must be at least 1");
  if (out.iterations < 1) throw InvalidArgumentError("config: iterations must be at least 1");
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t kb_index, std::size_t measure_index) {
  return derive_seed(master_seed, kb_index, measure_index + 0x5151);
}

LinearFit fit_linear(const std::vector<std::pair<double, double>>& points) {
  LinearFit fit;
  const double n = static_cast<double>(points.size());
  if (points.size() < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (auto [x, y] : points) {
    const double pred = fit.slope * x + fit.intercept;
    ss_res += (y - pred) * (y - pred);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

// --- runtime ------------------------------------------------------------------

ExperimentResult run_runtime_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Runtime) throw InvalidArgumentError("config is not a runtime experiment");
  ExperimentResult result;

  struct Cell {
    std::vector<ExperimentRecord> records;
    std::uint64_t total_micros = 0;
    double mean_iter_micros = 0.0;
    bool aborted = false;
  };
  const std::size_t ntasks = cfg.trials * cfg.measures.size();
  std::vector<Cell> cells(ntasks);

  run_tasks(ntasks, cfg.threads, [&](std::size_t task) {
    const std::size_t kb_index = task / cfg.measures.size();
    const std::size_t measure_index = task % cfg.measures.size();
    const KnowledgeBase kb = sample(spec_for_trial(cfg, kb_index));
    PropositionalStream stream = PropositionalStream::kb_stream(kb);
    const std::uint64_t seed = trial_seed(cfg.master_seed, kb_index, measure_index);
    sat::SatOptions sopts;
    sopts.budget_propagations = cfg.sat_budget;
    auto measure = make_stream_measure(cfg.measures[measure_index], kb.signature_ptr(), seed, sopts);
    StreamRunResult run = run_stream(*measure, stream, cfg.iterations, cfg.probe_cadence,
                                     std::chrono::duration_cast<std::chrono::microseconds>(cfg.per_iteration_timeout));
    Cell& cell = cells[task];
    cell.aborted = run.aborted;
    for (const auto& row : run.trace) {
      cell.records.push_back({measure->id(), kb_index, seed, row.iteration, row.value, row.elapsed_micros,
                              row.budget_flag});
    }
    if (!run.trace.empty()) {
      cell.total_micros = run.trace.back().elapsed_micros;
      // warm-up pass excluded from the per-iteration mean
      const std::uint64_t warmup_iters = std::min<std::uint64_t>(kb.size(), cfg.iterations / 2);
      std::uint64_t warm_elapsed = 0, warm_iter = 0;
      for (const auto& row : run.trace) {
        if (row.iteration + 1 <= warmup_iters) {
          warm_elapsed = row.elapsed_micros;
          warm_iter = row.iteration + 1;
        }
      }
      const std::uint64_t tail_iters = run.trace.back().iteration + 1 - warm_iter;
      if (tail_iters > 0) {
        cell.mean_iter_micros =
            static_cast<double>(cell.total_micros - warm_elapsed) / static_cast<double>(tail_iters);
      }
    }
  });

  for (const auto& cell : cells) {
    result.records.insert(result.records.end(), cell.records.begin(), cell.records.end());
  }
  write_records_csv(cfg.output_dir, result.records, result.files_written);
  write_timing_csv(cfg.output_dir, result.records, result.files_written);

  // Table-2 shaped summary: measure | mean RT per iteration | mean total RT
  auto out = open_out(cfg.output_dir, "runtime_summary_timing.csv", result.files_written);
  out << "measure,mean_iteration_micros,mean_total_micros,aborted_trials\n";
  std::string table = "measure                        RT/iter        RT total\n";
  for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
    double iter_sum = 0, total_sum = 0;
    std::size_t count = 0, aborted = 0;
    std::string id;
    for (std::size_t ti = 0; ti < cfg.trials; ++ti) {
      const Cell& cell = cells[ti * cfg.measures.size() + mi];
      if (cell.records.empty()) continue;
      id = cell.records.front().measure_id;
      iter_sum += cell.mean_iter_micros;
      total_sum += static_cast<double>(cell.total_micros);
      aborted += cell.aborted ? 1 : 0;
      ++count;
    }
    if (count == 0) continue;
    const double mean_iter = iter_sum / static_cast<double>(count);
    const double mean_total = total_sum / static_cast<double>(count);
    out << id << ',' << fmt_value(mean_iter) << ',' << fmt_value(mean_total) << ',' << aborted << '\n';
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %9.3f ms %12.3f ms\n", id.c_str(), mean_iter / 1000.0,
                  mean_total / 1000.0);
    table += line;
  }
  result.summary = table;
  return result;
}

// --- accuracy -------------------------------------------------------------------

ExperimentResult run_accuracy_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Accuracy) throw InvalidArgumentError("config is not an accuracy experiment");
  if (!cfg.kb_spec.target) throw InvalidArgumentError("accuracy experiment needs a target in kb_spec");
  ExperimentResult result;

  struct Cell {
    std::vector<ExperimentRecord> records;
    double target = 0.0;
  };
  const std::size_t ntasks = cfg.trials * cfg.measures.size();
  std::vector<Cell> cells(ntasks);

  run_tasks(ntasks, cfg.threads, [&](std::size_t task) {
    const std::size_t kb_index = task / cfg.measures.size();
    const std::size_t measure_index = task % cfg.measures.size();
    const SampleSpec spec = spec_for_trial(cfg, kb_index);
    const KnowledgeBase kb = sample(spec);
    PropositionalStream stream = PropositionalStream::kb_stream(kb);
    const std::uint64_t seed = trial_seed(cfg.master_seed, kb_index, measure_index);
    sat::SatOptions sopts;
    sopts.budget_propagations = cfg.sat_budget;
    auto measure = make_stream_measure(cfg.measures[measure_index], kb.signature_ptr(), seed, sopts);
    StreamRunResult run = run_stream(*measure, stream, cfg.iterations, cfg.probe_cadence,
                                     std::chrono::duration_cast<std::chrono::microseconds>(cfg.per_iteration_timeout));
    Cell& cell = cells[task];
    cell.target = static_cast<double>(spec.target->value);
    for (const auto& row : run.trace) {
      cell.records.push_back({measure->id(), kb_index, seed, row.iteration, row.value, row.elapsed_micros,
                              row.budget_flag});
    }
  });

  for (const auto& cell : cells) {
    result.records.insert(result.records.end(), cell.records.begin(), cell.records.end());
  }
  write_records_csv(cfg.output_dir, result.records, result.files_written);
  write_timing_csv(cfg.output_dir, result.records, result.files_written);

  // mean value per probe iteration across trials, plus the target reference
  std::map<std::string, std::map<std::uint64_t, std::pair<double, std::size_t>>> series;
  double target_sum = 0.0;
  for (std::size_t ti = 0; ti < cfg.trials; ++ti) {
    target_sum += cells[ti * cfg.measures.size()].target;
  }
  const double mean_target = cfg.trials ? target_sum / static_cast<double>(cfg.trials) : 0.0;
  for (const auto& r : result.records) {
    auto& slot = series[r.measure_id][r.iteration];
    slot.first += r.value;
    slot.second += 1;
  }

  auto out = open_out(cfg.output_dir, "accuracy_series.csv", result.files_written);
  out << "measure,iteration,mean_value,target\n";
  LineChart chart;
  chart.title = "accuracy";
  chart.x_label = "iteration";
  chart.y_label = "inconsistency value";
  for (const auto& [id, points] : series) {
    ChartSeries cs;
    cs.label = id;
    for (const auto& [iter, acc] : points) {
      const double mean = acc.first / static_cast<double>(acc.second);
      out << id << ',' << iter << ',' << fmt_value(mean) << ',' << fmt_value(mean_target) << '\n';
      cs.points.emplace_back(static_cast<double>(iter), mean);
    }
    chart.series.push_back(std::move(cs));
  }
  ChartSeries ref;
  ref.label = "target";
  ref.dashed = true;
  ref.points = {{0.0, mean_target}, {static_cast<double>(cfg.iterations - 1), mean_target}};
  chart.series.push_back(std::move(ref));
  const std::string svg_path = (fs::path(cfg.output_dir) / "accuracy.svg").string();
  write_line_chart(chart, svg_path);
  result.files_written.push_back(svg_path);

  char buf[128];
  std::snprintf(buf, sizeof(buf), "accuracy experiment: %zu measures x %zu trials, target mean %.3f\n",
                cfg.measures.size(), cfg.trials, mean_target);
  result.summary = buf;
  return result;
}

// --- scalability -------------------------------------------------------------------

ExperimentResult run_scalability_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::Scalability) {
    throw InvalidArgumentError("config is not a scalability experiment");
  }
  if (!cfg.kb_spec.target) throw InvalidArgumentError("scalability experiment needs a target in kb_spec");
  if (cfg.sizes.empty()) throw InvalidArgumentError("scalability experiment needs a size ladder");
  ExperimentResult result;

  struct Cell {
    std::uint64_t elapsed_micros = 0;
    std::uint64_t iterations = 0;
    bool converged = false;
    std::string measure_id;
    std::uint64_t seed = 0;
  };
  const std::size_t per_size = cfg.trials * cfg.measures.size();
  const std::size_t ntasks = cfg.sizes.size() * per_size;
  std::vector<Cell> cells(ntasks);

  run_tasks(ntasks, cfg.threads, [&](std::size_t task) {
    const std::size_t size_index = task / per_size;
    const std::size_t rest = task % per_size;
    const std::size_t kb_index = rest / cfg.measures.size();
    const std::size_t measure_index = rest % cfg.measures.size();

    SampleSpec spec = spec_for_trial(cfg, size_index * 10007 + kb_index);
    spec.num_formulas = cfg.sizes[size_index];
    const KnowledgeBase kb = sample(spec);
    const double target = static_cast<double>(spec.target->value);
    PropositionalStream stream = PropositionalStream::kb_stream(kb);
    const std::uint64_t seed = trial_seed(cfg.master_seed, size_index * 131 + kb_index, measure_index);
    sat::SatOptions sopts;
    sopts.budget_propagations = cfg.sat_budget;
    auto measure = make_stream_measure(cfg.measures[measure_index], kb.signature_ptr(), seed, sopts);

    Cell& cell = cells[task];
    cell.measure_id = measure->id();
    cell.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < cfg.iterations; ++i) {
      const double v = measure->update(stream.at(i));
      if (std::fabs(v - target) <= cfg.tolerance) {
        cell.converged = true;
        cell.iterations = i + 1;
        break;
      }
    }
    cell.elapsed_micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count());
    if (!cell.converged) cell.iterations = cfg.iterations;
  });

  // records: one row per (size, trial, measure); iteration = iterations to
  // converge, value = KB size (keeps the deterministic CSV wall-clock free)
  auto out = open_out(cfg.output_dir, "scalability_timing.csv", result.files_written);
  out << "measure,size,trial,seed,converged,iterations,elapsed_micros\n";
  std::map<std::string, std::vector<std::pair<double, double>>> fit_points;  // size -> mean elapsed
  std::map<std::string, std::map<std::size_t, std::pair<double, std::size_t>>> by_size;
  for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
    for (std::size_t ti = 0; ti < cfg.trials; ++ti) {
      for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
        const Cell& cell = cells[si * per_size + ti * cfg.measures.size() + mi];
        out << cell.measure_id << ',' << cfg.sizes[si] << ',' << ti << ',' << cell.seed << ','
            << (cell.converged ? 1 : 0) << ',' << cell.iterations << ',' << cell.elapsed_micros << '\n';
        result.records.push_back({cell.measure_id, si * cfg.trials + ti, cell.seed, cell.iterations,
                                  static_cast<double>(cfg.sizes[si]), cell.elapsed_micros, !cell.converged});
        if (cell.converged) {
          auto& slot = by_size[cell.measure_id][cfg.sizes[si]];
          slot.first += static_cast<double>(cell.elapsed_micros);
          slot.second += 1;
        }
      }
    }
  }
  write_records_csv(cfg.output_dir, result.records, result.files_written);

  LineChart chart;
  chart.title = "scalability: runtime to +-" + std::to_string(cfg.tolerance) + " convergence";
  chart.x_label = "knowledge base size";
  chart.y_label = "total runtime (s)";
  auto fits = open_out(cfg.output_dir, "scalability_fit_timing.csv", result.files_written);
  fits << "measure,slope_micros_per_formula,intercept_micros,r_squared\n";
  std::string table = "measure                        slope(us/formula)   R^2\n";
  for (const auto& [id, sizes] : by_size) {
    ChartSeries cs;
    cs.label = id;
    for (const auto& [size, acc] : sizes) {
      const double mean = acc.first / static_cast<double>(acc.second);
      fit_points[id].emplace_back(static_cast<double>(size), mean);
      cs.points.emplace_back(static_cast<double>(size), mean / 1e6);
    }
    chart.series.push_back(std::move(cs));
    const LinearFit fit = fit_linear(fit_points[id]);
    fits << id << ',' << fmt_value(fit.slope) << ',' << fmt_value(fit.intercept) << ','
         << fmt_value(fit.r_squared) << '\n';
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %14.3f %8.4f\n", id.c_str(), fit.slope, fit.r_squared);
    table += line;
  }
  const std::string svg_path = (fs::path(cfg.output_dir) / "scalability.svg").string();
  write_line_chart(chart, svg_path);
  result.files_written.push_back(svg_path);
  result.summary = table;
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::Runtime: return run_runtime_experiment(cfg);
    case ExperimentKind::Accuracy: return run_accuracy_experiment(cfg);
    case ExperimentKind::Scalability: return run_scalability_experiment(cfg);
  }
  throw InvalidArgumentError("unreachable experiment kind");
}

}  // namespace ink
