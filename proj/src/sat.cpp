#include "ink/sat.hpp"

#include <algorithm>

#include "ink/eval.hpp"

namespace ink::sat {

// --- Cnf ------------------------------------------------------------------

void Cnf::add_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
    if (lits[i + 1] == lit_not(lits[i])) return;  // tautology
  }
  if (lits.empty()) {
    has_empty_clause = true;
    return;
  }
  clauses.push_back(std::move(lits));
}

// --- CnfBuilder -------------------------------------------------------------

CnfBuilder::CnfBuilder(std::size_t num_atoms) : num_atoms_(num_atoms) {
  cnf_.nvars = static_cast<std::int32_t>(num_atoms);
}

Lit CnfBuilder::false_lit() {
  if (false_lit_ < 0) {
    std::int32_t v = cnf_.new_var();
    cnf_.add_clause({make_lit(v, true)});
    false_lit_ = make_lit(v, false);
  }
  return false_lit_;
}

Lit CnfBuilder::add(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return make_lit(static_cast<std::int32_t>(sig.index_of(f.atom_name())), false);
    case Formula::Kind::Contradiction: return false_lit();
    case Formula::Kind::Not: return lit_not(add(f.child(), sig));
    case Formula::Kind::And: {
      Lit a = add(f.left(), sig);
      Lit b = add(f.right(), sig);
      Lit v = make_lit(cnf_.new_var(), false);
      // v <-> a & b
      cnf_.add_clause({lit_not(v), a});
      cnf_.add_clause({lit_not(v), b});
      cnf_.add_clause({v, lit_not(a), lit_not(b)});
      return v;
    }
    case Formula::Kind::Or: {
      Lit a = add(f.left(), sig);
      Lit b = add(f.right(), sig);
      Lit v = make_lit(cnf_.new_var(), false);
      // v <-> a | b
      cnf_.add_clause({lit_not(v), a, b});
      cnf_.add_clause({v, lit_not(a)});
      cnf_.add_clause({v, lit_not(b)});
      return v;
    }
  }
  throw InvalidArgumentError("unreachable formula kind");
}

void CnfBuilder::assert_formula(const Formula& f, const Signature& sig) {
  cnf_.add_clause({add(f, sig)});
}

// --- DPLL ---------------------------------------------------------------------

namespace {

class Dpll {
 public:
  Dpll(const Cnf& cnf, const DpllOptions& opts) : cnf_(cnf), opts_(opts) {
    const std::size_t nv = static_cast<std::size_t>(cnf.nvars);
    assign_.assign(nv, -1);
    watches_.assign(2 * nv, {});
    trail_.reserve(nv);
    for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
      const auto& c = cnf.clauses[ci];
      if (c.size() == 1) {
        units_.push_back(c[0]);
      } else {
        watches_[c[0]].push_back(ci);
        watches_[c[1]].push_back(ci);
      }
    }
    watched_.assign(cnf.clauses.size(), {0, 1});
  }

  SolveResult run() {
    if (cnf_.has_empty_clause) return {SolveStatus::Unsat, {}, propagations_};
    for (Lit u : units_) {
      if (value(u) == 0) return {SolveStatus::Unsat, {}, propagations_};
      if (value(u) == -1 && !enqueue(u)) return {SolveStatus::Unsat, {}, propagations_};
    }
    if (!propagate()) return {SolveStatus::Unsat, {}, propagations_};
    for (;;) {
      if (propagations_ > opts_.max_propagations) return {SolveStatus::BudgetExceeded, {}, propagations_};
      std::int32_t var = pick_variable();
      if (var < 0) {
        std::vector<std::uint8_t> model(assign_.begin(), assign_.end());
        return {SolveStatus::Sat, std::move(model), propagations_};
      }
      bool phase = opts_.rng ? opts_.rng->coin() : opts_.phase_true_first;
      decide(make_lit(var, !phase));
      while (!propagate()) {
        if (!backtrack()) return {SolveStatus::Unsat, {}, propagations_};
      }
    }
  }

 private:
  // -1 unassigned, 0 false, 1 true for the positive literal of the var
  std::int8_t value(Lit l) const {
    std::int8_t v = assign_[static_cast<std::size_t>(lit_var(l))];
    if (v < 0) return -1;
    return lit_neg(l) ? static_cast<std::int8_t>(1 - v) : v;
  }

  bool enqueue(Lit l) {
    if (value(l) == 0) return false;
    if (value(l) == 1) return true;
    assign_[static_cast<std::size_t>(lit_var(l))] = lit_neg(l) ? 0 : 1;
    trail_.push_back(l);
    ++propagations_;
    return true;
  }

  void decide(Lit l) {
    decision_pos_.push_back(trail_.size());
    decision_flipped_.push_back(false);
    enqueue(l);
    // the decision itself does not count as a propagation
    --propagations_;
  }

  bool backtrack() {
    while (!decision_pos_.empty() && decision_flipped_.back()) {
      undo_to(decision_pos_.back());
      decision_pos_.pop_back();
      decision_flipped_.pop_back();
    }
    if (decision_pos_.empty()) return false;
    const Lit decided = trail_[decision_pos_.back()];
    undo_to(decision_pos_.back());
    decision_flipped_.back() = true;
    enqueue(lit_not(decided));
    --propagations_;
    return true;
  }

  void undo_to(std::size_t pos) {
    while (trail_.size() > pos) {
      assign_[static_cast<std::size_t>(lit_var(trail_.back()))] = -1;
      trail_.pop_back();
    }
    qhead_ = std::min(qhead_, pos);
  }

  // Two-watched-literal propagation. Returns false on conflict.
  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      const Lit falsified = lit_not(p);
      auto& watch_list = watches_[falsified];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t wi = 0; wi < watch_list.size(); ++wi) {
        const std::size_t ci = watch_list[wi];
        if (conflict) {
          watch_list[keep++] = ci;
          continue;
        }
        const auto& clause = cnf_.clauses[ci];
        auto& [w0, w1] = watched_[ci];
        // normalize: w0 is the falsified watch
        if (clause[w1] == falsified) std::swap(w0, w1);
        const Lit other = clause[w1];
        if (value(other) == 1) {
          watch_list[keep++] = ci;
          continue;
        }
        // search a replacement watch
        bool moved = false;
        for (std::size_t k = 0; k < clause.size(); ++k) {
          if (k == w0 || k == w1) continue;
          if (value(clause[k]) != 0) {
            w0 = k;
            watches_[clause[k]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;  // dropped from this list
        watch_list[keep++] = ci;
        if (value(other) == -1) {
          enqueue(other);
        } else {
          conflict = true;  // keep remaining watches, then report
        }
      }
      watch_list.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  std::int32_t pick_variable() {
    if (opts_.rng) {
      std::int32_t free_count = 0;
      for (std::int8_t a : assign_) free_count += (a < 0);
      if (free_count == 0) return -1;
      std::int32_t target = static_cast<std::int32_t>(opts_.rng->below(static_cast<std::uint64_t>(free_count)));
      for (std::size_t v = 0; v < assign_.size(); ++v) {
        if (assign_[v] < 0 && target-- == 0) return static_cast<std::int32_t>(v);
      }
      return -1;
    }
    for (std::size_t v = 0; v < assign_.size(); ++v) {
      if (assign_[v] < 0) return static_cast<std::int32_t>(v);
    }
    return -1;
  }

  const Cnf& cnf_;
  const DpllOptions& opts_;
  std::vector<std::int8_t> assign_;
  std::vector<std::vector<std::size_t>> watches_;           // per literal
  std::vector<std::pair<std::size_t, std::size_t>> watched_;  // per clause: watched positions
  std::vector<Lit> trail_;
  std::vector<std::size_t> decision_pos_;
  std::vector<bool> decision_flipped_;
  std::vector<Lit> units_;
  std::size_t qhead_ = 0;
  std::int64_t propagations_ = 0;
};

}  // namespace

SolveResult solve_dpll(const Cnf& cnf, const DpllOptions& opts) { return Dpll(cnf, opts).run(); }

// --- services -------------------------------------------------------------------

namespace {

Interpretation project_model(const std::vector<std::uint8_t>& model, const SignaturePtr& sig, Rng* rng) {
  Interpretation w(sig);
  for (std::size_t i = 0; i < sig->size(); ++i) {
    if (i < model.size()) {
      w.set(i, model[i] != 0);
    } else if (rng) {
      w.set(i, rng->coin());
    }
  }
  return w;
}

SatResult check_external(const Cnf& cnf, const SignaturePtr& sig, const std::string& solver_path);

}  // namespace

SatResult check(const std::vector<Formula>& formulas, const SignaturePtr& sig, const SatOptions& opts) {
  CnfBuilder builder(sig->size());
  for (const Formula& f : formulas) builder.assert_formula(f, *sig);
  if (opts.external_solver) return check_external(builder.cnf(), sig, *opts.external_solver);
  DpllOptions dopts;
  dopts.max_propagations = opts.budget_propagations;
  SolveResult res = solve_dpll(builder.cnf(), dopts);
  switch (res.status) {
    case SolveStatus::Sat: return {true, project_model(res.model, sig, nullptr)};
    case SolveStatus::Unsat: return {false, std::nullopt};
    case SolveStatus::BudgetExceeded:
      throw BudgetExceededError("sat check exceeded its propagation budget");
  }
  throw Error("unreachable");
}

bool is_consistent(const std::vector<Formula>& formulas, const SignaturePtr& sig, const SatOptions& opts) {
  return check(formulas, sig, opts).satisfiable;
}

bool is_consistent(const KnowledgeBase& kb, const SatOptions& opts) {
  return is_consistent(kb.formulas(), kb.signature_ptr(), opts);
}

bool is_consistent_subset(const KnowledgeBase& kb, std::span<const std::size_t> indices,
                          const SatOptions& opts) {
  std::vector<Formula> fs;
  fs.reserve(indices.size());
  for (std::size_t i : indices) fs.push_back(kb.formula(i));
  return is_consistent(fs, kb.signature_ptr(), opts);
}

Interpretation random_model(const Formula& f, const SignaturePtr& sig, Rng& rng, const SatOptions& opts) {
  CnfBuilder builder(sig->size());
  builder.assert_formula(f, *sig);
  DpllOptions dopts;
  dopts.max_propagations = opts.budget_propagations;
  dopts.rng = &rng;
  SolveResult res = solve_dpll(builder.cnf(), dopts);
  switch (res.status) {
    case SolveStatus::Sat: break;
    case SolveStatus::Unsat: throw UnsatFormulaError("random_model: formula has no model: " + f.to_string());
    case SolveStatus::BudgetExceeded:
      throw BudgetExceededError("random_model exceeded its propagation budget");
  }
  // atoms of the signature that never reached the CNF stay unassigned only
  // if they are outside the formula; DPLL assigns every CNF variable, and
  // the atom block covers the whole signature, so decisions already cover
  // all atoms. Keep the coin-flip path for robustness.
  return project_model(res.model, sig, &rng);
}

std::vector<Interpretation> enumerate_models(const Formula& f, const SignaturePtr& sig, std::size_t cap) {
  const std::size_t n = sig->size();
  if (n > 20) throw SignatureTooLargeError("enumerate_models: signature too large (max 20 atoms)");
  std::vector<std::uint64_t> bitmap = model_bitmap(f, *sig);
  std::vector<Interpretation> out;
  for (std::size_t w = 0; w < bitmap.size() && out.size() < cap; ++w) {
    std::uint64_t word = bitmap[w];
    while (word && out.size() < cap) {
      const int bit = std::countr_zero(word);
      word &= word - 1;
      out.push_back(Interpretation::from_index(sig, static_cast<std::uint64_t>(w) * 64 + bit));
    }
  }
  return out;
}

// defined in external_sat.cpp
namespace detail {
SatResult run_external_dimacs(const Cnf& cnf, const SignaturePtr& sig, const std::string& solver_path);
}

namespace {
SatResult check_external(const Cnf& cnf, const SignaturePtr& sig, const std::string& solver_path) {
  return detail::run_external_dimacs(cnf, sig, solver_path);
}
}  // namespace

}  // namespace ink::sat
