#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ink/formula.hpp"
#include "ink/measures.hpp"
#include "ink/rng.hpp"

namespace ink {

/// Total function from naturals to formulas. KB-streams replay a knowledge
/// base's canonical enumeration cyclically.
class PropositionalStream {
 public:
  static PropositionalStream kb_stream(KnowledgeBase kb);  // throws on empty KB
  static PropositionalStream generator(std::function<Formula(std::uint64_t)> source, SignaturePtr sig);

  Formula at(std::uint64_t i) const;
  const SignaturePtr& signature_ptr() const { return sig_; }

  /// Period of a KB-stream (the KB size); unset for generator streams.
  std::optional<std::size_t> period() const { return period_; }

 private:
  PropositionalStream() = default;
  std::function<Formula(std::uint64_t)> source_;
  SignaturePtr sig_;
  std::optional<std::size_t> period_;
};

/// Binary aggregation with result between its arguments: max, or exponential
/// smoothing g_a(new, old) = a*new + (1-a)*old.
class Aggregator {
 public:
  static Aggregator max();
  static Aggregator smooth(double alpha);  // alpha weights the NEW value
  static Aggregator parse(const std::string& text);  // "max" | "smooth:A"

  double apply(double new_value, double old_value) const;
  /// g(x,y) > min(x,y) for x != y; required for window convergence. Smoothing
  /// with alpha 0 or 1 fails this; construction succeeds but callers may warn.
  bool strictly_above_min() const;
  std::string to_string() const;

 private:
  enum class Kind { Max, Smooth };
  Kind kind_ = Kind::Max;
  double alpha_ = 0.0;
};

/// Monotonically decreasing perturbation probability with limit zero.
class DecaySchedule {
 public:
  static DecaySchedule reciprocal();  // f(i) = 1/(i+1)
  static DecaySchedule parse(const std::string& text);  // "recip"

  double operator()(std::uint64_t i) const;
  std::string to_string() const;
};

/// Sequentially-updated stream measure: one update per stream element,
/// returning the current estimate.
class StreamMeasure {
 public:
  virtual ~StreamMeasure() = default;
  virtual double update(const Formula& f) = 0;
  virtual double current() const = 0;
  virtual std::string id() const = 0;
  /// Set when the last update hit its base-measure budget and carried the
  /// previous value over.
  virtual bool last_update_budget_exceeded() const { return false; }
};

/// Base measures available to the window approach.
enum class BaseMeasure { Mi, MiC, C, Hs, Eta };
BaseMeasure parse_base_measure(const std::string& text);
std::string to_string(BaseMeasure m);
InconsistencyValue compute_measure(BaseMeasure m, const KnowledgeBase& kb, const sat::SatOptions& opts);

/// Naive window measure: keeps the last w formulas, applies an exact measure
/// to the window contents (as a set) and aggregates with g. Iteration 0
/// yields 0 by definition.
class WindowMeasure final : public StreamMeasure {
 public:
  /// w = nullopt means an unbounded window.
  WindowMeasure(BaseMeasure base, std::optional<std::size_t> w, Aggregator g,
                sat::SatOptions sat_opts = {});

  double update(const Formula& f) override;
  double current() const override { return value_; }
  std::string id() const override;
  bool last_update_budget_exceeded() const override { return budget_hit_; }

 private:
  BaseMeasure base_;
  std::optional<std::size_t> window_size_;
  Aggregator g_;
  sat::SatOptions sat_opts_;
  std::deque<Formula> window_;
  double value_ = 0.0;
  std::uint64_t iteration_ = 0;
  bool budget_hit_ = false;
};

/// Population approximation of the hitting-set measure: m candidate
/// interpretation sets evolve by randomized removal (annealing schedule f)
/// and demand-driven insertion of random models; the estimate is the mean of
/// (|C|-1), aggregated with g.
class HsStreamMeasure final : public StreamMeasure {
 public:
  HsStreamMeasure(std::size_t m, Aggregator g, DecaySchedule f, SignaturePtr sig, std::uint64_t seed,
                  sat::SatOptions sat_opts = {});

  double update(const Formula& f) override;
  double current() const override { return value_; }
  std::string id() const override;

  const std::vector<std::vector<Interpretation>>& candidates() const { return cands_; }
  std::uint64_t formulas_seen() const { return seen_; }

 private:
  std::size_t m_;
  Aggregator g_;
  DecaySchedule f_;
  SignaturePtr sig_;
  sat::SatOptions sat_opts_;
  Rng rng_;
  std::vector<std::vector<Interpretation>> cands_;
  std::uint64_t seen_ = 0;
  double value_ = 0.0;
  std::unordered_map<Formula, bool, FormulaHash> sat_memo_;  // satisfiability per distinct formula
  bool formula_satisfiable(const Formula& f);
};

/// Contension analogue: candidates are three-valued interpretations; the
/// annealing step flips a random B-atom back to T or F, the repair step
/// flips atoms of the formula to B until it is satisfied; the estimate is
/// the mean number of B-valued atoms.
class CStreamMeasure final : public StreamMeasure {
 public:
  CStreamMeasure(std::size_t m, Aggregator g, DecaySchedule f, SignaturePtr sig, std::uint64_t seed,
                 sat::SatOptions sat_opts = {});

  double update(const Formula& f) override;
  double current() const override { return value_; }
  std::string id() const override;

  const std::vector<ThreeValuedInterpretation>& candidates() const { return cands_; }

 private:
  std::size_t m_;
  Aggregator g_;
  DecaySchedule f_;
  SignaturePtr sig_;
  sat::SatOptions sat_opts_;
  Rng rng_;
  std::vector<ThreeValuedInterpretation> cands_;
  std::uint64_t seen_ = 0;
  double value_ = 0.0;
  std::unordered_map<Formula, bool, FormulaHash> sat_memo_;
  bool formula_satisfiable(const Formula& f);
};

/// Measure spec grammar (CLI and bench configs):
///   window:BASE:W:G     W a number or "inf"
///   hs:M:G:F            population hitting-set measure
///   c:M:G:F             population contension measure
///   G = max | smooth:A; F = recip
std::unique_ptr<StreamMeasure> make_stream_measure(const std::string& spec, const SignaturePtr& sig,
                                                   std::uint64_t seed, const sat::SatOptions& sat_opts = {});

// --- runner -------------------------------------------------------------------

struct TraceRow {
  std::uint64_t iteration;     // index of the last applied update
  double value;
  std::uint64_t elapsed_micros;  // cumulative computation time, probes excluded
  bool budget_flag;              // base-measure budget hit at this probe
};

struct StreamRunResult {
  std::vector<TraceRow> trace;
  bool aborted = false;  // per-iteration timeout tripped
  double final_value = 0.0;
};

/// Applies `measure` to s(0), s(1), ... for `iterations` steps, sampling the
/// trace every `probe_cadence` updates (plus the final one). A per-iteration
/// wall-clock timeout aborts the run with a partial, flagged trace.
StreamRunResult run_stream(StreamMeasure& measure, const PropositionalStream& s, std::uint64_t iterations,
                           std::uint64_t probe_cadence = 100,
                           std::optional<std::chrono::microseconds> per_iteration_timeout = std::nullopt);

}  // namespace ink
