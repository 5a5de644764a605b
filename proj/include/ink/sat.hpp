#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ink/formula.hpp"
#include "ink/rng.hpp"

namespace ink::sat {

// --- CNF layer -------------------------------------------------------------

/// Literal: variable v as 2v (positive) or 2v+1 (negated).
using Lit = std::int32_t;

inline Lit make_lit(std::int32_t var, bool neg) { return 2 * var + (neg ? 1 : 0); }
inline std::int32_t lit_var(Lit l) { return l >> 1; }
inline bool lit_neg(Lit l) { return (l & 1) != 0; }
inline Lit lit_not(Lit l) { return l ^ 1; }

struct Cnf {
  std::int32_t nvars = 0;
  std::vector<std::vector<Lit>> clauses;
  bool has_empty_clause = false;

  std::int32_t new_var() { return nvars++; }
  /// Normalizes (sorts, dedupes, drops tautologies); records empty clauses.
  void add_clause(std::vector<Lit> lits);
};

/// Tseitin transformation of formulas over a signature. The first
/// signature-size variables are the atoms; auxiliary gate variables follow
/// and are projected out of models.
class CnfBuilder {
 public:
  explicit CnfBuilder(std::size_t num_atoms);

  /// Adds the clauses defining f and returns the literal equivalent to f.
  Lit add(const Formula& f, const Signature& sig);
  /// add() plus a unit clause asserting the formula.
  void assert_formula(const Formula& f, const Signature& sig);

  Cnf& cnf() { return cnf_; }
  std::size_t num_atoms() const { return num_atoms_; }

 private:
  Lit false_lit();
  Cnf cnf_;
  std::size_t num_atoms_;
  Lit false_lit_ = -1;
};

// --- solver ------------------------------------------------------------------

struct DpllOptions {
  std::int64_t max_propagations = 10'000'000;
  Rng* rng = nullptr;            // randomized branching when set
  bool phase_true_first = false; // default branch polarity (maximal-model bias)
};

enum class SolveStatus { Sat, Unsat, BudgetExceeded };

struct SolveResult {
  SolveStatus status;
  std::vector<std::uint8_t> model;  // per var, valid when Sat
  std::int64_t propagations = 0;
};

/// DPLL with two watched literals, unit propagation and chronological
/// backtracking; no clause learning.
SolveResult solve_dpll(const Cnf& cnf, const DpllOptions& opts = {});

// --- knowledge-base-level services ------------------------------------------

struct SatOptions {
  std::int64_t budget_propagations = 10'000'000;
  std::optional<std::string> external_solver;  // DIMACS subprocess path
};

struct SatResult {
  bool satisfiable;
  std::optional<Interpretation> model;  // set when satisfiable
};

/// Two-valued satisfiability of the conjunction of the given formulas.
/// Unassigned signature atoms default to false in the model. Throws
/// BudgetExceededError when the decision budget runs out; never returns a
/// guess.
SatResult check(const std::vector<Formula>& formulas, const SignaturePtr& sig, const SatOptions& opts = {});

bool is_consistent(const std::vector<Formula>& formulas, const SignaturePtr& sig, const SatOptions& opts = {});
bool is_consistent(const KnowledgeBase& kb, const SatOptions& opts = {});
bool is_consistent_subset(const KnowledgeBase& kb, std::span<const std::size_t> indices,
                          const SatOptions& opts = {});

/// A model of f chosen by randomized DPLL branching; every model has nonzero
/// probability, uniformity is not promised. Atoms of sig not constrained by
/// f are assigned by fair coin. Deterministic for a fixed rng state.
/// Throws UnsatFormulaError when f has no model.
Interpretation random_model(const Formula& f, const SignaturePtr& sig, Rng& rng, const SatOptions& opts = {});

/// All models of f over sig in enumeration order, truncated at cap.
/// Guarded to signatures of at most 20 atoms.
std::vector<Interpretation> enumerate_models(const Formula& f, const SignaturePtr& sig, std::size_t cap);

}  // namespace ink::sat
