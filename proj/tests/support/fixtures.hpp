#pragma once

// Shared fixtures and exhaustive oracles for the test suites. The oracles
// here work by plain truth-table enumeration with the recursive evaluator,
// deliberately independent of the solver, the MUS enumerator and the
// bit-sliced kernels they check.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ink/formula.hpp"
#include "ink/parse.hpp"
#include "ink/rng.hpp"

namespace ink::testing {

// --- canonical example knowledge bases -------------------------------------

inline KnowledgeBase kb1() { return parse_kb("a\nb | c\n!a & !b\nd\n"); }
inline KnowledgeBase kb2() { return parse_kb("a\n!a\nb\n!b\n"); }
inline KnowledgeBase kb3() {
  return parse_kb("a | d\na & b & c\nb\n!b | !a\na & b & !c\na & !b & c\n");
}
inline KnowledgeBase kb_contension_pair_first() { return parse_kb("a & b & c\n!a & !b & !c\n"); }
inline KnowledgeBase kb_contension_pair_second() { return parse_kb("a & b\n!a & b\na & !b\n"); }
inline KnowledgeBase kb_eta_first() { return parse_kb("a\n!a\n"); }
inline KnowledgeBase kb_eta_second() { return parse_kb("a\nb\n!a | !b\n"); }

// --- truth-table helpers -----------------------------------------------------

inline bool tt_subset_consistent(const KnowledgeBase& kb, const std::vector<std::size_t>& subset) {
  const std::size_t n = kb.signature().size();
  const std::uint64_t space = std::uint64_t{1} << n;
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    const Interpretation w = Interpretation::from_index(kb.signature_ptr(), idx);
    bool all = true;
    for (std::size_t i : subset) {
      if (!eval2(w, kb.formula(i))) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

inline bool tt_consistent(const KnowledgeBase& kb) {
  std::vector<std::size_t> all(kb.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return tt_subset_consistent(kb, all);
}

/// Exhaustive MI enumeration over all 2^|K| subsets.
inline std::vector<std::vector<std::size_t>> bf_mi(const KnowledgeBase& kb) {
  const std::size_t m = kb.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1) subset.push_back(i);
    }
    if (tt_subset_consistent(kb, subset)) continue;
    bool minimal = true;
    for (std::size_t drop = 0; drop < subset.size() && minimal; ++drop) {
      std::vector<std::size_t> smaller = subset;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!tt_subset_consistent(kb, smaller)) minimal = false;
    }
    if (minimal) out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> bf_free(const KnowledgeBase& kb) {
  std::vector<bool> in_mi(kb.size(), false);
  for (const auto& m : bf_mi(kb)) {
    for (std::size_t i : m) in_mi[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (!in_mi[i]) out.push_back(i);
  }
  return out;
}

/// Classical entailment over a shared signature, by truth table.
inline bool tt_entails(const Formula& a, const Formula& b, const SignaturePtr& sig) {
  const std::uint64_t space = std::uint64_t{1} << sig->size();
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    const Interpretation w = Interpretation::from_index(sig, idx);
    if (eval2(w, a) && !eval2(w, b)) return false;
  }
  return true;
}

// --- random generation ----------------------------------------------------------

inline std::vector<std::string> test_atoms(std::size_t n) {
  const char* pool[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n && k < 10; ++k) out.push_back(pool[k]);
  return out;
}

inline Formula random_formula(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 0 || rng.real() < 0.38) {
    Formula f = Formula::atom(atoms[rng.index(atoms.size())]);
    return rng.coin() ? Formula::negate(std::move(f)) : f;
  }
  switch (rng.index(4)) {
    case 0: return Formula::negate(random_formula(rng, atoms, depth - 1));
    case 1:
    case 2:
      return Formula::conj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default:
      return Formula::disj(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

inline KnowledgeBase random_kb(Rng& rng, std::size_t max_atoms, std::size_t max_formulas, int depth = 3) {
  const std::size_t natoms = 1 + rng.index(max_atoms);
  const auto atoms = test_atoms(natoms);
  const std::size_t count = 1 + rng.index(max_formulas);
  std::vector<Formula> formulas;
  std::size_t guard = 0;
  while (formulas.size() < count && ++guard < 200) {
    Formula f = random_formula(rng, atoms, depth);
    bool dup = false;
    for (const auto& g : formulas) {
      if (g == f) {
        dup = true;
        break;
      }
    }
    if (!dup) formulas.push_back(std::move(f));
  }
  return KnowledgeBase(std::move(formulas), make_signature(test_atoms(max_atoms)));
}

/// A knowledge base guaranteed inconsistent (adds a fresh conflict pair when
/// the random draw happens to be consistent).
inline KnowledgeBase random_inconsistent_kb(Rng& rng, std::size_t max_atoms, std::size_t max_formulas) {
  for (;;) {
    KnowledgeBase kb = random_kb(rng, max_atoms, max_formulas);
    if (!tt_consistent(kb)) return kb;
  }
}

// --- equivalence rewrites (double negation, commutation, De Morgan) -----------------

inline Formula rewrite_equivalent(Rng& rng, const Formula& f) {
  // rewrite children first, then possibly the node itself
  Formula g = f;
  switch (f.kind()) {
    case Formula::Kind::Not: g = Formula::negate(rewrite_equivalent(rng, f.child())); break;
    case Formula::Kind::And: g = Formula::conj(rewrite_equivalent(rng, f.left()), rewrite_equivalent(rng, f.right())); break;
    case Formula::Kind::Or: g = Formula::disj(rewrite_equivalent(rng, f.left()), rewrite_equivalent(rng, f.right())); break;
    default: break;
  }
  const double roll = rng.real();
  if (g.kind() == Formula::Kind::Not && g.child().kind() == Formula::Kind::Not && roll < 0.5) {
    return g.child().child();  // double negation elimination
  }
  if (roll < 0.2) return Formula::negate(Formula::negate(g));  // double negation introduction
  if ((g.kind() == Formula::Kind::And || g.kind() == Formula::Kind::Or) && roll < 0.5) {
    // commutation
    return g.kind() == Formula::Kind::And ? Formula::conj(g.right(), g.left())
                                          : Formula::disj(g.right(), g.left());
  }
  if (g.kind() == Formula::Kind::Not && roll < 0.8) {
    const Formula inner = g.child();
    if (inner.kind() == Formula::Kind::And) {
      return Formula::disj(Formula::negate(inner.left()), Formula::negate(inner.right()));
    }
    if (inner.kind() == Formula::Kind::Or) {
      return Formula::conj(Formula::negate(inner.left()), Formula::negate(inner.right()));
    }
  }
  return g;
}

/// Semi-extensionally equivalent variant of kb (same signature); nullopt when
/// the rewrite collides two formulas (the bijection would break).
inline std::optional<KnowledgeBase> rewritten_kb(Rng& rng, const KnowledgeBase& kb) {
  std::vector<Formula> out;
  for (const Formula& f : kb.formulas()) {
    Formula g = rewrite_equivalent(rng, f);
    for (const Formula& h : out) {
      if (h == g) return std::nullopt;
    }
    out.push_back(std::move(g));
  }
  return KnowledgeBase(std::move(out), kb.signature_ptr());
}

}  // namespace ink::testing
