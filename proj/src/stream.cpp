#include "ink/stream.hpp"

#include <algorithm>
#include <cstdio>

namespace ink {

// --- PropositionalStream ----------------------------------------------------

PropositionalStream PropositionalStream::kb_stream(KnowledgeBase kb) {
  if (kb.empty()) throw InvalidArgumentError("kb_stream: knowledge base is empty");
  PropositionalStream s;
  s.sig_ = kb.signature_ptr();
  s.period_ = kb.size();
  auto shared = std::make_shared<KnowledgeBase>(std::move(kb));
  s.source_ = [shared](std::uint64_t i) { return shared->formula(i % shared->size()); };
  return s;
}

PropositionalStream PropositionalStream::generator(std::function<Formula(std::uint64_t)> source,
                                                   SignaturePtr sig) {
  PropositionalStream s;
  s.source_ = std::move(source);
  s.sig_ = std::move(sig);
  return s;
}

Formula PropositionalStream::at(std::uint64_t i) const { return source_(i); }

// --- Aggregator ----------------------------------------------------------------

Aggregator Aggregator::max() { return Aggregator(); }

Aggregator Aggregator::smooth(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw InvalidArgumentError("smoothing weight must lie in [0,1]");
  Aggregator g;
  g.kind_ = Kind::Smooth;
  g.alpha_ = alpha;
  return g;
}

Aggregator Aggregator::parse(const std::string& text) {
  if (text == "max") return max();
  if (text.rfind("smooth:", 0) == 0) {
    try {
      return smooth(std::stod(text.substr(7)));
    } catch (const std::logic_error&) {
      throw InvalidArgumentError("bad smoothing weight in aggregator: " + text);
    }
  }
  throw InvalidArgumentError("unknown aggregator: " + text + " (expected max or smooth:A)");
}

double Aggregator::apply(double new_value, double old_value) const {
  if (kind_ == Kind::Max) return std::max(new_value, old_value);
  return alpha_ * new_value + (1.0 - alpha_) * old_value;
}

bool Aggregator::strictly_above_min() const {
  if (kind_ == Kind::Max) return true;
  return alpha_ > 0.0 && alpha_ < 1.0;
}

std::string Aggregator::to_string() const {
  if (kind_ == Kind::Max) return "max";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "smooth:%g", alpha_);
  return buf;
}

// --- DecaySchedule ----------------------------------------------------------------

DecaySchedule DecaySchedule::reciprocal() { return DecaySchedule(); }

DecaySchedule DecaySchedule::parse(const std::string& text) {
  if (text == "recip") return reciprocal();
  throw InvalidArgumentError("unknown decay schedule: " + text + " (expected recip)");
}

double DecaySchedule::operator()(std::uint64_t i) const {
  return 1.0 / (static_cast<double>(i) + 1.0);
}

std::string DecaySchedule::to_string() const { return "recip"; }

// --- base measures -------------------------------------------------------------------

BaseMeasure parse_base_measure(const std::string& text) {
  if (text == "mi") return BaseMeasure::Mi;
  if (text == "mic") return BaseMeasure::MiC;
  if (text == "c") return BaseMeasure::C;
  if (text == "hs") return BaseMeasure::Hs;
  if (text == "eta") return BaseMeasure::Eta;
  throw InvalidArgumentError("unknown measure: " + text + " (expected mi, mic, c, hs or eta)");
}

std::string to_string(BaseMeasure m) {
  switch (m) {
    case BaseMeasure::Mi: return "mi";
    case BaseMeasure::MiC: return "mic";
    case BaseMeasure::C: return "c";
    case BaseMeasure::Hs: return "hs";
    case BaseMeasure::Eta: return "eta";
  }
  return "?";
}

InconsistencyValue compute_measure(BaseMeasure m, const KnowledgeBase& kb, const sat::SatOptions& opts) {
  switch (m) {
    case BaseMeasure::Mi: return i_mi(kb, opts);
    case BaseMeasure::MiC: return i_mi_c(kb, opts);
    case BaseMeasure::C: return i_c(kb, opts);
    case BaseMeasure::Hs: return i_hs(kb, opts);
    case BaseMeasure::Eta: {
      EtaOptions eopts;
      eopts.sat = opts;
      return i_eta(kb, eopts);
    }
  }
  throw InvalidArgumentError("unreachable measure kind");
}

// --- WindowMeasure ----------------------------------------------------------------------

WindowMeasure::WindowMeasure(BaseMeasure base, std::optional<std::size_t> w, Aggregator g,
                             sat::SatOptions sat_opts)
    : base_(base), window_size_(w), g_(g), sat_opts_(std::move(sat_opts)) {
  if (window_size_ && *window_size_ == 0) throw InvalidArgumentError("window size must be positive");
}

double WindowMeasure::update(const Formula& f) {
  window_.push_back(f);
  if (window_size_ && window_.size() > *window_size_) window_.pop_front();
  const std::uint64_t i = iteration_++;
  budget_hit_ = false;
  if (i == 0) return value_;  // defined as 0 at iteration 0

  // window contents as a knowledge base (a set: duplicates collapse)
  std::vector<Formula> distinct;
  for (const Formula& g : window_) {
    bool seen = false;
    for (const Formula& h : distinct) {
      if (h == g) {
        seen = true;
        break;
      }
    }
    if (!seen) distinct.push_back(g);
  }
  try {
    KnowledgeBase kb(std::move(distinct));
    value_ = g_.apply(compute_measure(base_, kb, sat_opts_).as_double(), value_);
  } catch (const BudgetExceededError&) {
    budget_hit_ = true;  // carry the previous value
  }
  return value_;
}

std::string WindowMeasure::id() const {
  std::string w = window_size_ ? std::to_string(*window_size_) : "inf";
  return "window:" + ink::to_string(base_) + ":" + w + ":" + g_.to_string();
}

// --- HsStreamMeasure ------------------------------------------------------------------------

HsStreamMeasure::HsStreamMeasure(std::size_t m, Aggregator g, DecaySchedule f, SignaturePtr sig,
                                 std::uint64_t seed, sat::SatOptions sat_opts)
    : m_(m), g_(g), f_(f), sig_(std::move(sig)), sat_opts_(std::move(sat_opts)), rng_(seed) {
  if (m_ == 0) throw InvalidArgumentError("population size must be positive");
  cands_.assign(m_, {});  // candidates start as empty sets
}

bool HsStreamMeasure::formula_satisfiable(const Formula& f) {
  auto it = sat_memo_.find(f);
  if (it != sat_memo_.end()) return it->second;
  const bool ok = sat::is_consistent({f}, sig_, sat_opts_);
  sat_memo_.emplace(f, ok);
  return ok;
}

double HsStreamMeasure::update(const Formula& form) {
  if (!formula_satisfiable(form)) {
    throw ContradictionError("stream formula is contradictory: " + form.to_string());
  }
  ++seen_;
  double new_value = 0.0;
  for (auto& cand : cands_) {
    if (rng_.real() < f_(seen_)) {
      if (!cand.empty()) cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(rng_.index(cand.size())));
    }
    bool satisfied = false;
    for (const Interpretation& w : cand) {
      if (eval2(w, form)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) {
      Interpretation w = sat::random_model(form, sig_, rng_, sat_opts_);
      if (std::find(cand.begin(), cand.end(), w) == cand.end()) cand.push_back(std::move(w));
    }
    new_value += (static_cast<double>(cand.size()) - 1.0) / static_cast<double>(m_);
  }
  value_ = g_.apply(new_value, value_);
  return value_;
}

std::string HsStreamMeasure::id() const {
  return "hs:" + std::to_string(m_) + ":" + g_.to_string() + ":" + f_.to_string();
}

// --- CStreamMeasure ----------------------------------------------------------------------------

CStreamMeasure::CStreamMeasure(std::size_t m, Aggregator g, DecaySchedule f, SignaturePtr sig,
                               std::uint64_t seed, sat::SatOptions sat_opts)
    : m_(m), g_(g), f_(f), sig_(std::move(sig)), sat_opts_(std::move(sat_opts)), rng_(seed) {
  if (m_ == 0) throw InvalidArgumentError("population size must be positive");
  // all-T start: the minimal-B counterpart of the empty candidate set
  cands_.assign(m_, ThreeValuedInterpretation(sig_, TruthValue3::True));
}

bool CStreamMeasure::formula_satisfiable(const Formula& f) {
  auto it = sat_memo_.find(f);
  if (it != sat_memo_.end()) return it->second;
  const bool ok = sat::is_consistent({f}, sig_, sat_opts_);
  sat_memo_.emplace(f, ok);
  return ok;
}

double CStreamMeasure::update(const Formula& form) {
  if (!formula_satisfiable(form)) {
    throw ContradictionError("stream formula is contradictory: " + form.to_string());
  }
  ++seen_;
  double new_value = 0.0;
  for (auto& cand : cands_) {
    if (rng_.real() < f_(seen_)) {
      std::vector<std::size_t> both = cand.both_atoms();
      if (!both.empty()) {
        cand.set(both[rng_.index(both.size())], rng_.coin() ? TruthValue3::True : TruthValue3::False);
      }
    }
    if (!satisfies3(cand, form)) {
      // flip atoms of the formula to B, uniformly among those not already B,
      // re-evaluating after each flip; all-B satisfies any classically
      // satisfiable formula, so this terminates
      std::vector<std::size_t> flippable;
      for (const std::string& a : form.atoms()) {
        const std::size_t idx = sig_->index_of(a);
        if (cand.value(idx) != TruthValue3::Both) flippable.push_back(idx);
      }
      while (!satisfies3(cand, form) && !flippable.empty()) {
        const std::size_t pick = rng_.index(flippable.size());
        cand.set(flippable[pick], TruthValue3::Both);
        flippable.erase(flippable.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    new_value += static_cast<double>(cand.both_count()) / static_cast<double>(m_);
  }
  value_ = g_.apply(new_value, value_);
  return value_;
}

std::string CStreamMeasure::id() const {
  return "c:" + std::to_string(m_) + ":" + g_.to_string() + ":" + f_.to_string();
}

// --- measure spec parsing --------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// G consumes one token ("max") or two ("smooth", alpha).
Aggregator parse_aggregator_tokens(const std::vector<std::string>& toks, std::size_t& i) {
  if (i >= toks.size()) throw InvalidArgumentError("measure spec: missing aggregator");
  if (toks[i] == "max") {
    ++i;
    return Aggregator::max();
  }
  if (toks[i] == "smooth") {
    if (i + 1 >= toks.size()) throw InvalidArgumentError("measure spec: smooth needs a weight");
    Aggregator g = Aggregator::parse("smooth:" + toks[i + 1]);
    i += 2;
    return g;
  }
  throw InvalidArgumentError("measure spec: unknown aggregator " + toks[i]);
}

}  // namespace

std::unique_ptr<StreamMeasure> make_stream_measure(const std::string& spec, const SignaturePtr& sig,
                                                   std::uint64_t seed, const sat::SatOptions& sat_opts) {
  const std::vector<std::string> toks = split(spec, ':');
  if (toks.empty()) throw InvalidArgumentError("empty measure spec");
  auto parse_count = [&](const std::string& t) -> std::size_t {
    try {
      const long long v = std::stoll(t);
      if (v <= 0) throw InvalidArgumentError("measure spec: count must be positive: " + t);
      return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw InvalidArgumentError("measure spec: bad count: " + t);
    }
  };

  if (toks[0] == "window") {
    if (toks.size() < 4) throw InvalidArgumentError("measure spec: window needs window:BASE:W:G");
    const BaseMeasure base = parse_base_measure(toks[1]);
    std::optional<std::size_t> w;
    if (toks[2] != "inf") w = parse_count(toks[2]);
    std::size_t i = 3;
    Aggregator g = parse_aggregator_tokens(toks, i);
    if (i != toks.size()) throw InvalidArgumentError("measure spec: trailing tokens in " + spec);
    if (!g.strictly_above_min()) {
      std::fprintf(stderr, "warning: aggregator %s does not satisfy g(x,y) > min(x,y); "
                           "the window measure may not converge\n", g.to_string().c_str());
    }
    return std::make_unique<WindowMeasure>(base, w, g, sat_opts);
  }
  if (toks[0] == "hs" || toks[0] == "c") {
    if (toks.size() < 4) throw InvalidArgumentError("measure spec: population measures need " + toks[0] +
                                                    ":M:G:F");
    const std::size_t m = parse_count(toks[1]);
    std::size_t i = 2;
    Aggregator g = parse_aggregator_tokens(toks, i);
    if (i + 1 != toks.size()) throw InvalidArgumentError("measure spec: expected decay schedule in " + spec);
    DecaySchedule f = DecaySchedule::parse(toks[i]);
    if (!g.strictly_above_min()) {
      std::fprintf(stderr, "warning: aggregator %s does not satisfy g(x,y) > min(x,y); "
                           "the population measure may not converge\n", g.to_string().c_str());
    }
    if (toks[0] == "hs") return std::make_unique<HsStreamMeasure>(m, g, f, sig, seed, sat_opts);
    return std::make_unique<CStreamMeasure>(m, g, f, sig, seed, sat_opts);
  }
  throw InvalidArgumentError("unknown measure spec: " + spec);
}

// --- runner -----------------------------------------------------------------------------------------

StreamRunResult run_stream(StreamMeasure& measure, const PropositionalStream& s, std::uint64_t iterations,
                           std::uint64_t probe_cadence,
                           std::optional<std::chrono::microseconds> per_iteration_timeout) {
  if (iterations == 0) throw InvalidArgumentError("run_stream: iterations must be at least 1");
  if (probe_cadence == 0) throw InvalidArgumentError("run_stream: probe cadence must be positive");

  StreamRunResult result;
  std::uint64_t elapsed_micros = 0;
  bool budget_since_probe = false;
  for (std::uint64_t i = 0; i < iterations; ++i) {
    const Formula f = s.at(i);
    const auto t0 = std::chrono::steady_clock::now();
    const double v = measure.update(f);
    const auto dt = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    elapsed_micros += static_cast<std::uint64_t>(dt.count());
    budget_since_probe = budget_since_probe || measure.last_update_budget_exceeded();

    const bool timed_out = per_iteration_timeout && dt > *per_iteration_timeout;
    if ((i + 1) % probe_cadence == 0 || i + 1 == iterations || timed_out) {
      result.trace.push_back({i, v, elapsed_micros, budget_since_probe || timed_out});
      budget_since_probe = false;
    }
    result.final_value = v;
    if (timed_out) {
      result.aborted = true;  // a single over-budget iteration aborts the whole stream
      break;
    }
  }
  return result;
}

}  // namespace ink
