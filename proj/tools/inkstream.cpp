// inkstream: exact and stream-based inconsistency measurement for
// propositional knowledge bases.
//
// Exit codes: 0 ok, 1 usage error, 2 input parse error, 3 budget/timeout
// exhausted.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ink/bench.hpp"
#include "ink/measures.hpp"
#include "ink/parse.hpp"
#include "ink/sampler.hpp"
#include "ink/stream.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

ink::KnowledgeBase load_kb(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".cnf") return ink::read_dimacs_file(path);
  return ink::read_kb_file(path);
}

ink::sat::SatOptions make_sat_options(const std::string& sat_flag, std::int64_t budget) {
  ink::sat::SatOptions opts;
  opts.budget_propagations = budget;
  if (!sat_flag.empty()) {
    if (sat_flag.rfind("external:", 0) != 0) {
      throw ink::InvalidArgumentError("--sat expects external:<path>");
    }
    opts.external_solver = sat_flag.substr(9);
  }
  return opts;
}

std::string kb_id_from_path(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int cmd_measure(const std::string& kb_path, const std::string& measure, const std::string& sat_flag,
                std::int64_t budget, std::size_t eta_cap) {
  const ink::KnowledgeBase kb = load_kb(kb_path);
  const ink::sat::SatOptions opts = make_sat_options(sat_flag, budget);
  ink::InconsistencyValue value = ink::InconsistencyValue::finite(0.0);
  const ink::BaseMeasure base = ink::parse_base_measure(measure);
  if (base == ink::BaseMeasure::Eta) {
    ink::EtaOptions eopts;
    eopts.sat = opts;
    eopts.signature_cap = eta_cap;
    value = ink::i_eta(kb, eopts);
  } else {
    value = ink::compute_measure(base, kb, opts);
  }
  std::cout << value.to_string() << "\n";
  return kExitOk;
}

int cmd_stream(const std::string& kb_path, const std::string& measure_spec, std::uint64_t iterations,
               std::uint64_t seed, const std::string& trace_path, std::uint64_t cadence,
               std::int64_t timeout_ms, std::int64_t budget) {
  const ink::KnowledgeBase kb = load_kb(kb_path);
  ink::PropositionalStream stream = ink::PropositionalStream::kb_stream(kb);
  ink::sat::SatOptions sopts;
  sopts.budget_propagations = budget;
  auto measure = ink::make_stream_measure(measure_spec, kb.signature_ptr(), seed, sopts);
  std::optional<std::chrono::microseconds> timeout;
  if (timeout_ms > 0) timeout = std::chrono::microseconds(timeout_ms * 1000);
  const ink::StreamRunResult run = ink::run_stream(*measure, stream, iterations, cadence, timeout);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw ink::Error("cannot write trace: " + trace_path);
    out << "measure,kb_id,seed,iteration,value,elapsed_micros,timeout_flag\n";
    const std::string kb_id = kb_id_from_path(kb_path);
    for (const auto& row : run.trace) {
      char value_buf[40];
      if (std::isinf(row.value)) {
        std::snprintf(value_buf, sizeof(value_buf), "inf");
      } else {
        std::snprintf(value_buf, sizeof(value_buf), "%.10g", row.value);
      }
      out << measure->id() << ',' << kb_id << ',' << seed << ',' << row.iteration << ',' << value_buf << ','
          << row.elapsed_micros << ',' << (row.budget_flag ? 1 : 0) << '\n';
    }
  }
  std::cout << run.final_value << "\n";
  return run.aborted ? kExitBudget : kExitOk;
}

int cmd_sample(std::size_t formulas, std::size_t atoms, const std::string& target, std::uint64_t seed,
               const std::string& out_path, std::size_t len_min, std::size_t len_max,
               const std::string& dimacs_path) {
  ink::SampleSpec spec;
  spec.num_formulas = formulas;
  spec.num_atoms = atoms;
  spec.seed = seed;
  spec.clause_length = {len_min, len_max};
  if (!target.empty()) {
    const auto parts = ink::split_list(target, ':');
    if (parts.size() != 2) throw ink::InvalidArgumentError("--target expects hs:V or c:T");
    ink::SampleTarget t;
    if (parts[0] == "hs") t.measure = ink::TargetMeasure::Hs;
    else if (parts[0] == "c") t.measure = ink::TargetMeasure::C;
    else throw ink::InvalidArgumentError("--target expects hs:V or c:T");
    t.value = static_cast<std::size_t>(std::stoull(parts[1]));
    spec.target = t;
  }
  const ink::KnowledgeBase kb = ink::sample(spec);
  std::string header = "formulas=" + std::to_string(formulas) + " atoms=" + std::to_string(atoms) +
                       " seed=" + std::to_string(seed);
  if (!target.empty()) header += " target=" + target;
  ink::write_kb_file(kb, out_path, header);
  if (!dimacs_path.empty()) {
    std::ofstream out(dimacs_path, std::ios::binary);
    if (!out) throw ink::Error("cannot write DIMACS file: " + dimacs_path);
    out << ink::to_dimacs(kb);
  }
  std::cout << "wrote " << kb.size() << " formulas over " << kb.signature().size() << " atoms to "
            << out_path << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir, std::size_t threads_override) {
  ink::FlatConfig flat = ink::FlatConfig::from_file(config_path);
  ink::ExperimentConfig cfg = ink::ExperimentConfig::from_config(flat);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads_override > 0) cfg.threads = threads_override;
  const ink::ExperimentResult result = ink::run_experiment(cfg);
  std::cout << result.summary;
  for (const auto& f : result.files_written) std::cout << "wrote " << f << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and stream-based inconsistency measures for propositional knowledge bases"};
  app.require_subcommand(1);

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "compute an exact inconsistency measure of a KB file");
  std::string kb_path, measure_name, sat_flag;
  std::int64_t budget = 10'000'000;
  std::size_t eta_cap = 12;
  measure_cmd->add_option("--kb", kb_path, "knowledge base file (.cnf for DIMACS)")->required();
  measure_cmd->add_option("--measure", measure_name, "one of mi, mic, c, hs, eta")->required();
  measure_cmd->add_option("--sat", sat_flag, "external:<path> to use a DIMACS solver subprocess");
  measure_cmd->add_option("--budget", budget, "SAT propagation budget per call");
  measure_cmd->add_option("--eta-cap", eta_cap, "signature cap for the eta measure");

  // stream
  auto* stream_cmd = app.add_subcommand("stream", "run a stream measure over the cyclic KB-stream");
  std::string stream_kb, stream_measure, trace_path;
  std::uint64_t iterations = 1000, stream_seed = 0, cadence = 100;
  std::int64_t timeout_ms = 120000;
  stream_cmd->add_option("--kb", stream_kb, "knowledge base file")->required();
  stream_cmd->add_option("--measure", stream_measure,
                         "window:BASE:W:G | hs:M:G:F | c:M:G:F (G = max | smooth:A, F = recip)")
      ->required();
  stream_cmd->add_option("--iterations", iterations, "number of stream updates")->required();
  stream_cmd->add_option("--seed", stream_seed, "rng seed");
  stream_cmd->add_option("--trace", trace_path, "trace CSV output path");
  stream_cmd->add_option("--cadence", cadence, "probe cadence (iterations per trace row)");
  stream_cmd->add_option("--timeout-ms", timeout_ms, "per-iteration timeout; 0 disables");
  stream_cmd->add_option("--budget", budget, "SAT propagation budget per call");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "generate a random or value-controlled knowledge base");
  std::size_t formulas = 0, atoms = 0, len_min = 2, len_max = 4;
  std::string target, out_path, dimacs_path;
  std::uint64_t sample_seed = 0;
  sample_cmd->add_option("--formulas", formulas, "number of formulas")->required();
  sample_cmd->add_option("--atoms", atoms, "number of atoms")->required();
  sample_cmd->add_option("--target", target, "hs:V or c:T for a prescribed inconsistency value");
  sample_cmd->add_option("--seed", sample_seed, "rng seed");
  sample_cmd->add_option("--out", out_path, "output KB file")->required();
  sample_cmd->add_option("--len-min", len_min, "minimum clause length");
  sample_cmd->add_option("--len-max", len_max, "maximum clause length");
  sample_cmd->add_option("--dimacs", dimacs_path, "also export DIMACS (pure-CNF KBs only)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark experiment from a config file");
  std::string config_path, bench_out;
  std::size_t threads = 0;
  bench_cmd->add_option("--config", config_path, "experiment config (flat key = value)")->required();
  bench_cmd->add_option("--out", bench_out, "output directory (overrides config)");
  bench_cmd->add_option("--threads", threads, "worker threads (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (measure_cmd->parsed()) return cmd_measure(kb_path, measure_name, sat_flag, budget, eta_cap);
    if (stream_cmd->parsed())
      return cmd_stream(stream_kb, stream_measure, iterations, stream_seed, trace_path, cadence, timeout_ms,
                        budget);
    if (sample_cmd->parsed())
      return cmd_sample(formulas, atoms, target, sample_seed, out_path, len_min, len_max, dimacs_path);
    if (bench_cmd->parsed()) return cmd_bench(config_path, bench_out, threads);
  } catch (const ink::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ink::BudgetExceededError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ink::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
