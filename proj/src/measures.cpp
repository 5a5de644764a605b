#include "ink/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "ink/eval.hpp"
#include "ink/mus.hpp"
#include "ink/simplex.hpp"

namespace ink {

// --- InconsistencyValue -----------------------------------------------------

InconsistencyValue InconsistencyValue::finite(double v) {
  if (!(v >= 0.0) || std::isinf(v)) throw InvalidArgumentError("inconsistency value must be a finite non-negative number");
  return InconsistencyValue(v, false);
}

double InconsistencyValue::value() const {
  if (infinite_) throw InvalidArgumentError("value() on infinite inconsistency value");
  return value_;
}

double InconsistencyValue::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

bool InconsistencyValue::operator==(const InconsistencyValue& o) const {
  if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
  return value_ == o.value_;
}

bool InconsistencyValue::operator<(const InconsistencyValue& o) const {
  if (infinite_) return false;
  if (o.infinite_) return true;
  return value_ < o.value_;
}

std::string InconsistencyValue::to_string() const {
  if (infinite_) return "inf";
  if (value_ == static_cast<double>(static_cast<long long>(value_))) {
    return std::to_string(static_cast<long long>(value_));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value_);
  return buf;
}

// --- ProbabilityFunction -------------------------------------------------------

ProbabilityFunction::ProbabilityFunction(SignaturePtr sig, std::vector<double> weights)
    : sig_(std::move(sig)), weights_(std::move(weights)) {
  const std::size_t n = sig_->size();
  if (n > 20) throw SignatureTooLargeError("probability function: signature too large");
  if (weights_.size() != (std::size_t{1} << n)) {
    throw InvalidArgumentError("probability function: weight vector size mismatch");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < -1e-12) throw InvalidArgumentError("probability function: negative weight");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw InvalidArgumentError("probability function: weights sum to " + std::to_string(total));
  }
}

double ProbabilityFunction::probability(const Formula& f) const {
  std::vector<std::uint64_t> bitmap = model_bitmap(f, *sig_);
  double p = 0.0;
  for (std::size_t w = 0; w < bitmap.size(); ++w) {
    std::uint64_t word = bitmap[w];
    while (word) {
      const int bit = std::countr_zero(word);
      word &= word - 1;
      p += weights_[w * 64 + static_cast<std::size_t>(bit)];
    }
  }
  return p;
}

// --- MI measures ------------------------------------------------------------------

InconsistencyValue i_mi(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  MiEnumOptions mopts;
  mopts.sat = opts;
  return InconsistencyValue::finite(static_cast<double>(enumerate_mi(kb, mopts).count()));
}

InconsistencyValue i_mi_c(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  MiEnumOptions mopts;
  mopts.sat = opts;
  double total = 0.0;
  for (const auto& m : enumerate_mi(kb, mopts).sets) total += 1.0 / static_cast<double>(m.size());
  return InconsistencyValue::finite(total);
}

// --- contension ----------------------------------------------------------------------

namespace {

// SAT encoding of "does K have a three-valued model whose B-set is exactly
// X": two variables per atom (p = value in {T,B}, q = value in {F,B}); X
// forces both, other atoms force exactly one. Formula satisfaction is the
// p-plane of the (p,q) circuit.
class ThreeValuedEncoder {
 public:
  explicit ThreeValuedEncoder(const KnowledgeBase& kb) : kb_(kb), natoms_(kb.signature().size()) {}

  bool satisfiable_with_bset(const std::vector<std::size_t>& bset, const sat::SatOptions& opts) {
    sat::Cnf cnf;
    cnf.nvars = static_cast<std::int32_t>(2 * natoms_);
    nvars_ = cnf.nvars;
    std::vector<bool> in_b(natoms_, false);
    for (std::size_t a : bset) in_b[a] = true;
    for (std::size_t a = 0; a < natoms_; ++a) {
      const sat::Lit p = sat::make_lit(static_cast<std::int32_t>(2 * a), false);
      const sat::Lit q = sat::make_lit(static_cast<std::int32_t>(2 * a + 1), false);
      if (in_b[a]) {
        cnf.add_clause({p});
        cnf.add_clause({q});
      } else {
        cnf.add_clause({p, q});
        cnf.add_clause({sat::lit_not(p), sat::lit_not(q)});
      }
    }
    for (const Formula& f : kb_.formulas()) {
      auto [pf, qf] = planes(f, cnf);
      (void)qf;
      cnf.add_clause({pf});
    }
    sat::DpllOptions dopts;
    dopts.max_propagations = opts.budget_propagations;
    sat::SolveResult res = sat::solve_dpll(cnf, dopts);
    if (res.status == sat::SolveStatus::BudgetExceeded) {
      throw BudgetExceededError("contension check exceeded its propagation budget");
    }
    return res.status == sat::SolveStatus::Sat;
  }

 private:
  std::pair<sat::Lit, sat::Lit> planes(const Formula& f, sat::Cnf& cnf) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        const auto a = kb_.signature().index_of(f.atom_name());
        return {sat::make_lit(static_cast<std::int32_t>(2 * a), false),
                sat::make_lit(static_cast<std::int32_t>(2 * a + 1), false)};
      }
      case Formula::Kind::Contradiction: return {false_lit(cnf), true_lit(cnf)};
      case Formula::Kind::Not: {
        auto [p, q] = planes(f.child(), cnf);
        return {q, p};
      }
      case Formula::Kind::And: {
        auto [p1, q1] = planes(f.left(), cnf);
        auto [p2, q2] = planes(f.right(), cnf);
        return {and_gate(cnf, p1, p2), or_gate(cnf, q1, q2)};
      }
      case Formula::Kind::Or: {
        auto [p1, q1] = planes(f.left(), cnf);
        auto [p2, q2] = planes(f.right(), cnf);
        return {or_gate(cnf, p1, p2), and_gate(cnf, q1, q2)};
      }
    }
    throw InvalidArgumentError("unreachable formula kind");
  }

  sat::Lit and_gate(sat::Cnf& cnf, sat::Lit a, sat::Lit b) {
    const sat::Lit v = sat::make_lit(new_var(cnf), false);
    cnf.add_clause({sat::lit_not(v), a});
    cnf.add_clause({sat::lit_not(v), b});
    cnf.add_clause({v, sat::lit_not(a), sat::lit_not(b)});
    return v;
  }

  sat::Lit or_gate(sat::Cnf& cnf, sat::Lit a, sat::Lit b) {
    const sat::Lit v = sat::make_lit(new_var(cnf), false);
    cnf.add_clause({sat::lit_not(v), a, b});
    cnf.add_clause({v, sat::lit_not(a)});
    cnf.add_clause({v, sat::lit_not(b)});
    return v;
  }

  sat::Lit false_lit(sat::Cnf& cnf) {
    const sat::Lit v = sat::make_lit(new_var(cnf), false);
    cnf.add_clause({sat::lit_not(v)});
    return v;
  }

  sat::Lit true_lit(sat::Cnf& cnf) {
    const sat::Lit v = sat::make_lit(new_var(cnf), false);
    cnf.add_clause({v});
    return v;
  }

  std::int32_t new_var(sat::Cnf& cnf) { return cnf.new_var(); }

  const KnowledgeBase& kb_;
  std::size_t natoms_;
  std::int32_t nvars_ = 0;
};

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - (k - i)) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

InconsistencyValue i_c(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  const std::size_t n = kb.signature().size();
  if (sat::is_consistent(kb, opts)) return InconsistencyValue::finite(0.0);
  ThreeValuedEncoder enc(kb);
  // candidate B-sets by increasing size; monotone, so the first hit is the
  // minimum
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    do {
      if (enc.satisfiable_with_bset(comb, opts)) return InconsistencyValue::finite(static_cast<double>(k));
    } while (next_combination(comb, n));
  }
  // only reachable when some formula contains the contradiction constant
  throw ContradictionError("contension undefined: knowledge base has no three-valued model");
}

// --- hitting sets / partitions ----------------------------------------------------

namespace {

struct BlockKey {
  std::vector<std::uint64_t> words;
  bool operator==(const BlockKey& o) const { return words == o.words; }
};

struct BlockKeyHash {
  std::size_t operator()(const BlockKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : k.words) h = (h ^ w) * 0x100000001b3ULL;
    return h;
  }
};

// Backtracking assignment of formulas (canonical order) to a bounded number
// of consistent blocks. Symmetry break: a formula may open at most one new
// block. Consistency of a block is a function of its member set and is
// cached across the deepening loop.
class PartitionSearch {
 public:
  PartitionSearch(const KnowledgeBase& kb, const sat::SatOptions& opts)
      : kb_(kb), opts_(opts), key_words_((kb.size() + 63) / 64) {}

  bool try_blocks(std::size_t nblocks, std::vector<std::vector<std::size_t>>& out) {
    blocks_.assign(nblocks, {});
    keys_.assign(nblocks, BlockKey{std::vector<std::uint64_t>(key_words_, 0)});
    if (extend(0, 0, nblocks)) {
      out.clear();
      for (auto& b : blocks_) {
        if (!b.empty()) out.push_back(b);
      }
      return true;
    }
    return false;
  }

 private:
  bool extend(std::size_t formula, std::size_t used, std::size_t nblocks) {
    if (formula == kb_.size()) return used > 0 || kb_.empty();
    const std::size_t open_limit = std::min(used + 1, nblocks);
    for (std::size_t b = 0; b < open_limit; ++b) {
      keys_[b].words[formula / 64] |= std::uint64_t{1} << (formula % 64);
      if (block_consistent(keys_[b], blocks_[b], formula)) {
        blocks_[b].push_back(formula);
        if (extend(formula + 1, std::max(used, b + 1), nblocks)) return true;
        blocks_[b].pop_back();
      }
      keys_[b].words[formula / 64] &= ~(std::uint64_t{1} << (formula % 64));
    }
    return false;
  }

  bool block_consistent(const BlockKey& key, const std::vector<std::size_t>& members, std::size_t extra) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::size_t> subset = members;
    subset.push_back(extra);
    const bool ok = sat::is_consistent_subset(kb_, subset, opts_);
    cache_.emplace(key, ok);
    return ok;
  }

  const KnowledgeBase& kb_;
  const sat::SatOptions& opts_;
  std::size_t key_words_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<BlockKey> keys_;
  std::unordered_map<BlockKey, bool, BlockKeyHash> cache_;
};

bool has_contradictory_formula(const KnowledgeBase& kb, const sat::SatOptions& opts, std::size_t* which) {
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (!sat::is_consistent({kb.formula(i)}, kb.signature_ptr(), opts)) {
      if (which) *which = i;
      return true;
    }
  }
  return false;
}

Partitioning partition_impl(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  if (kb.empty()) return Partitioning{{{}}};
  PartitionSearch search(kb, opts);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t nblocks = 1; nblocks <= kb.size(); ++nblocks) {
    if (search.try_blocks(nblocks, blocks)) return Partitioning{std::move(blocks)};
  }
  throw ContradictionError("no consistent partitioning: knowledge base contains a contradictory formula");
}

}  // namespace

InconsistencyValue i_hs(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  if (has_contradictory_formula(kb, opts, nullptr)) return InconsistencyValue::infinite();
  Partitioning p = partition_impl(kb, opts);
  return InconsistencyValue::finite(static_cast<double>(p.blocks.size()) - 1.0);
}

Partitioning min_consistent_partition(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  std::size_t which = 0;
  if (has_contradictory_formula(kb, opts, &which)) {
    throw ContradictionError("contradictory formula present: " + kb.formula(which).to_string());
  }
  return partition_impl(kb, opts);
}

HittingSet min_hitting_set(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  Partitioning p = min_consistent_partition(kb, opts);
  HittingSet hs;
  for (const auto& block : p.blocks) {
    std::vector<Formula> fs;
    for (std::size_t i : block) fs.push_back(kb.formula(i));
    sat::SatResult res = sat::check(fs, kb.signature_ptr(), opts);
    if (!res.satisfiable) throw Error("internal: partition block is inconsistent");
    hs.interpretations.push_back(std::move(*res.model));
  }
  return hs;
}

// --- eta ---------------------------------------------------------------------------

EtaWitness i_eta_with_witness(const KnowledgeBase& kb, const EtaOptions& opts) {
  const std::size_t n = kb.signature().size();
  if (n > opts.signature_cap) {
    throw SignatureTooLargeError("eta measure: signature size " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(opts.signature_cap));
  }
  const std::size_t space = std::size_t{1} << n;

  // variables: P(w) for each interpretation, then xi
  lp::Problem prob;
  prob.nvars = space + 1;
  const std::size_t xi = space;
  prob.objective.assign(prob.nvars, 0.0);
  prob.objective[xi] = 1.0;

  // per formula: sum of its model weights - xi >= 0
  for (const Formula& f : kb.formulas()) {
    lp::Constraint row;
    row.coeffs.assign(prob.nvars, 0.0);
    std::vector<std::uint64_t> bitmap = model_bitmap(f, kb.signature());
    for (std::size_t w = 0; w < bitmap.size(); ++w) {
      std::uint64_t word = bitmap[w];
      while (word) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        row.coeffs[w * 64 + static_cast<std::size_t>(bit)] = 1.0;
      }
    }
    row.coeffs[xi] = -1.0;
    row.rel = lp::Relation::GreaterEq;
    row.rhs = 0.0;
    prob.rows.push_back(std::move(row));
  }
  // total probability mass
  {
    lp::Constraint row;
    row.coeffs.assign(prob.nvars, 0.0);
    for (std::size_t w = 0; w < space; ++w) row.coeffs[w] = 1.0;
    row.rel = lp::Relation::Eq;
    row.rhs = 1.0;
    prob.rows.push_back(std::move(row));
  }
  // xi <= 1 keeps the objective bounded for vacuous constraint sets
  {
    lp::Constraint row;
    row.coeffs.assign(prob.nvars, 0.0);
    row.coeffs[xi] = 1.0;
    row.rel = lp::Relation::LessEq;
    row.rhs = 1.0;
    prob.rows.push_back(std::move(row));
  }

  lp::Solution sol = lp::maximize(prob, opts.lp_pivot_tolerance);
  if (sol.status != lp::Status::Optimal) throw Error("eta LP did not solve to optimality");

  std::vector<double> weights(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(space));
  // clean tiny simplex residue so the witness passes its own invariants
  double total = 0.0;
  for (double& w : weights) {
    if (w < 0.0 && w > -1e-9) w = 0.0;
    total += w;
  }
  if (total > 0.0) {
    for (double& w : weights) w /= total;
  } else {
    weights.assign(space, 1.0 / static_cast<double>(space));
  }

  double eta = 1.0 - sol.objective;
  if (eta < 0.0 && eta > -1e-9) eta = 0.0;
  return {InconsistencyValue::finite(eta), ProbabilityFunction(kb.signature_ptr(), std::move(weights))};
}

InconsistencyValue i_eta(const KnowledgeBase& kb, const EtaOptions& opts) {
  return i_eta_with_witness(kb, opts).value;
}

// --- exhaustive oracles ---------------------------------------------------------------

InconsistencyValue i_c_bruteforce(const KnowledgeBase& kb) {
  const std::size_t n = kb.signature().size();
  if (n > 10) throw SignatureTooLargeError("i_c_bruteforce: more than 10 atoms");

  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= 3;

  std::vector<CompiledFormula> programs;
  programs.reserve(kb.size());
  for (const Formula& f : kb.formulas()) programs.push_back(compile(f, kb.signature()));

  std::size_t best = n + 1;
  bool found = false;
  std::vector<std::uint64_t> p_planes(n), q_planes(n), acc(1), out_p(1), out_q(1);
  std::vector<std::uint8_t> digits(64 * n);

  for (std::uint64_t base = 0; base < space; base += 64) {
    const std::size_t lanes = static_cast<std::size_t>(std::min<std::uint64_t>(64, space - base));
    // base-3 digits of each assignment index: 0=T, 1=F, 2=B
    for (std::size_t a = 0; a < n; ++a) {
      p_planes[a] = 0;
      q_planes[a] = 0;
    }
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      std::uint64_t v = base + lane;
      for (std::size_t a = 0; a < n; ++a) {
        const std::uint8_t d = static_cast<std::uint8_t>(v % 3);
        v /= 3;
        digits[lane * n + a] = d;
        if (d != 1) p_planes[a] |= std::uint64_t{1} << lane;  // T or B
        if (d != 0) q_planes[a] |= std::uint64_t{1} << lane;  // F or B
      }
    }
    acc[0] = lanes == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << lanes) - 1);
    for (const auto& prog : programs) {
      eval3_block(prog, p_planes.data(), q_planes.data(), n, 1, out_p.data(), out_q.data());
      acc[0] &= out_p[0];
      if (!acc[0]) break;
    }
    std::uint64_t word = acc[0];
    while (word) {
      const int bit = std::countr_zero(word);
      word &= word - 1;
      std::size_t bcount = 0;
      for (std::size_t a = 0; a < n; ++a) bcount += digits[static_cast<std::size_t>(bit) * n + a] == 2;
      if (bcount < best) {
        best = bcount;
        found = true;
        if (best == 0) return InconsistencyValue::finite(0.0);
      }
    }
  }
  if (!found) throw ContradictionError("contension undefined: knowledge base has no three-valued model");
  return InconsistencyValue::finite(static_cast<double>(best));
}

InconsistencyValue i_hs_bruteforce(const KnowledgeBase& kb) {
  const std::size_t n = kb.signature().size();
  const std::size_t m = kb.size();
  if (n > 10) throw SignatureTooLargeError("i_hs_bruteforce: more than 10 atoms");
  if (m > 12) throw InvalidArgumentError("i_hs_bruteforce: more than 12 formulas");
  if (m == 0) return InconsistencyValue::finite(0.0);

  const std::size_t space = std::size_t{1} << n;

  // satisfaction signature of every interpretation: which formulas it models
  std::vector<std::vector<std::uint64_t>> bitmaps;
  for (const Formula& f : kb.formulas()) {
    bitmaps.push_back(model_bitmap(f, kb.signature()));
    if (popcount_words(bitmaps.back()) == 0) return InconsistencyValue::infinite();
  }
  std::vector<std::uint32_t> sigs(space, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t w = 0; w < space; ++w) {
      if ((bitmaps[j][w / 64] >> (w % 64)) & 1) sigs[w] |= std::uint32_t{1} << j;
    }
  }
  // cover the formula set with as few interpretation signatures as possible
  const std::uint32_t full = m == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
  std::sort(sigs.begin(), sigs.end());
  sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t s : sigs) {
    if (s == 0) continue;
    bool dominated = false;
    for (std::uint32_t t : sigs) {
      if (t != s && (s & t) == s) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(s);
  }
  const std::size_t states = std::size_t{1} << m;
  std::vector<std::uint8_t> dp(states, 0xff);
  dp[0] = 0;
  for (std::size_t s = 0; s < states; ++s) {
    if (dp[s] == 0xff) continue;
    for (std::uint32_t cover : maximal) {
      const std::size_t t = s | cover;
      if (dp[t] > dp[s] + 1) dp[t] = static_cast<std::uint8_t>(dp[s] + 1);
    }
  }
  if (dp[full] == 0xff) return InconsistencyValue::infinite();  // unreachable given per-formula check
  return InconsistencyValue::finite(static_cast<double>(dp[full]) - 1.0);
}

}  // namespace ink
