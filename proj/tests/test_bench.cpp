#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ink/bench.hpp"
#include "support/fixtures.hpp"

using namespace ink;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ink_bench_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("flat config parsing") {
  const auto cfg = FlatConfig::parse(
      "# comment\n"
      "experiment = \"accuracy\"\n"
      "measures = \"hs:10:smooth:0.75:recip, window:mi:3:max\"\n"
      "formulas = 60\natoms = 8\ntarget = \"hs:3\"\n"
      "trials = 4\niterations = 240\nmaster_seed = 9\n"
      "sizes = \"500:1500:500\"\n");
  CHECK(cfg.get_string("experiment") == "accuracy");
  CHECK(cfg.get_int("formulas") == 60);
  CHECK(cfg.get_int("missing", 5) == 5);
  CHECK_THROWS_AS(cfg.get_string("missing"), InvalidArgumentError);
  CHECK_THROWS_AS(FlatConfig::parse("novalue\n"), ParseError);

  const ExperimentConfig ec = ExperimentConfig::from_config(cfg);
  CHECK(ec.experiment == ExperimentKind::Accuracy);
  CHECK(ec.measures.size() == 2);
  CHECK(ec.kb_spec.num_formulas == 60);
  REQUIRE(ec.kb_spec.target.has_value());
  CHECK(ec.kb_spec.target->value == 3);
  CHECK(ec.trials == 4);
  CHECK(ec.sizes == std::vector<std::size_t>{500, 1000, 1500});
}

TEST_CASE("trial seeds are stable and distinct") {
  CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(1, 2, 4));
  CHECK(trial_seed(1, 2, 3) != trial_seed(1, 3, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(2, 2, 3));
}

TEST_CASE("linear fit") {
  const LinearFit exact = fit_linear({{1, 3}, {2, 5}, {3, 7}, {4, 9}});
  CHECK(exact.slope == doctest::Approx(2.0));
  CHECK(exact.intercept == doctest::Approx(1.0));
  CHECK(exact.r_squared == doctest::Approx(1.0));

  const LinearFit noisy = fit_linear({{1, 1}, {2, 5}, {3, 2}, {4, 9}});
  CHECK(noisy.r_squared < 1.0);
  CHECK(noisy.r_squared > 0.0);
}

TEST_CASE("accuracy experiment: deterministic records, target reached by the exact window") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Accuracy;
  cfg.measures = {"window:hs:inf:max", "hs:5:smooth:0.75:recip"};
  cfg.kb_spec.num_formulas = 12;
  cfg.kb_spec.num_atoms = 6;
  cfg.kb_spec.target = SampleTarget{TargetMeasure::Hs, 2};
  cfg.trials = 3;
  cfg.iterations = 36;  // three passes
  cfg.probe_cadence = 4;
  cfg.master_seed = 77;
  cfg.output_dir = fresh_dir("accuracy_a");

  const ExperimentResult res = run_accuracy_experiment(cfg);
  CHECK(!res.records.empty());

  // the unbounded exact window hits the target after one pass, every trial
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    double final_window = -1;
    for (const auto& r : res.records) {
      if (r.measure_id == "window:hs:inf:max" && r.kb_index == t) final_window = r.value;
    }
    CHECK(final_window == doctest::Approx(2.0));
  }

  const std::string first_records = slurp(cfg.output_dir + "/records.csv");
  const std::string first_series = slurp(cfg.output_dir + "/accuracy_series.csv");
  cfg.output_dir = fresh_dir("accuracy_b");
  run_accuracy_experiment(cfg);
  CHECK(first_records == slurp(cfg.output_dir + "/records.csv"));
  CHECK(first_series == slurp(cfg.output_dir + "/accuracy_series.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "accuracy.svg"));
}

TEST_CASE("short window on a multi-formula conflict stays flat at zero") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Accuracy;
  cfg.measures = {"window:mi:1:max"};
  cfg.kb_spec.num_formulas = 6;
  cfg.kb_spec.num_atoms = 5;
  cfg.kb_spec.target = SampleTarget{TargetMeasure::Hs, 1};  // conflicts need two formulas
  cfg.trials = 2;
  cfg.iterations = 24;
  cfg.probe_cadence = 6;
  cfg.master_seed = 5;
  cfg.output_dir = fresh_dir("flat");
  const ExperimentResult res = run_accuracy_experiment(cfg);
  for (const auto& r : res.records) CHECK(r.value == 0.0);
}

TEST_CASE("runtime experiment: summary rows and reproducible records") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Runtime;
  cfg.measures = {"hs:5:smooth:0.75:recip", "window:mi:4:max"};
  cfg.kb_spec.num_formulas = 16;
  cfg.kb_spec.num_atoms = 6;
  cfg.trials = 2;
  cfg.iterations = 64;
  cfg.probe_cadence = 16;
  cfg.master_seed = 13;
  cfg.output_dir = fresh_dir("runtime_a");

  const ExperimentResult res = run_runtime_experiment(cfg);
  CHECK(res.summary.find("hs:5:smooth:0.75:recip") != std::string::npos);
  CHECK(res.summary.find("window:mi:4:max") != std::string::npos);
  const std::string first = slurp(cfg.output_dir + "/records.csv");

  cfg.output_dir = fresh_dir("runtime_b");
  run_runtime_experiment(cfg);
  CHECK(first == slurp(cfg.output_dir + "/records.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "records_timing.csv"));
}

TEST_CASE("scalability experiment: one row per size/trial/measure") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Scalability;
  cfg.measures = {"hs:5:smooth:0.75:recip"};
  cfg.kb_spec.num_atoms = 8;
  cfg.kb_spec.target = SampleTarget{TargetMeasure::Hs, 2};
  cfg.trials = 1;
  cfg.iterations = 600;
  cfg.sizes = {40};
  cfg.master_seed = 3;
  cfg.output_dir = fresh_dir("scal");
  const ExperimentResult res = run_scalability_experiment(cfg);
  REQUIRE(res.records.size() == 1);
  CHECK(!res.records[0].timeout_flag);  // converged
  CHECK(res.records[0].value == 40.0);
  CHECK(res.summary.find("hs:5") != std::string::npos);
}

TEST_CASE("experiment kind mismatches are rejected") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Runtime;
  cfg.measures = {"hs:5:max:recip"};
  CHECK_THROWS_AS(run_accuracy_experiment(cfg), InvalidArgumentError);
  CHECK_THROWS_AS(run_scalability_experiment(cfg), InvalidArgumentError);
  CHECK_THROWS_AS(parse_experiment_kind("nope"), InvalidArgumentError);
}

TEST_CASE("worker pool matches single-threaded output") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Accuracy;
  cfg.measures = {"hs:4:smooth:0.75:recip", "c:4:smooth:0.75:recip"};
  cfg.kb_spec.num_formulas = 20;
  cfg.kb_spec.num_atoms = 7;
  cfg.kb_spec.target = SampleTarget{TargetMeasure::Hs, 2};
  cfg.trials = 4;
  cfg.iterations = 60;
  cfg.probe_cadence = 20;
  cfg.master_seed = 31;
  cfg.threads = 1;
  cfg.output_dir = fresh_dir("pool_seq");
  run_accuracy_experiment(cfg);
  const std::string seq = slurp(cfg.output_dir + "/records.csv");

  cfg.threads = 2;
  cfg.output_dir = fresh_dir("pool_par");
  run_accuracy_experiment(cfg);
  CHECK(seq == slurp(cfg.output_dir + "/records.csv"));
}
