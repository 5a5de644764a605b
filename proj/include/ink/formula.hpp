#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ink/errors.hpp"

namespace ink {

/// Third truth value of Priest's three-valued logic: T, F and B ("both").
enum class TruthValue3 : std::uint8_t { True = 0, False = 1, Both = 2 };

std::string to_string(TruthValue3 v);

bool is_valid_atom_name(std::string_view name);  // [A-Za-z_][A-Za-z0-9_]*

/// Ordered set of atom names. Ordering is lexicographic and stable, so
/// interpretations index deterministically and the model space enumerates in
/// a fixed order.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::string> atoms);  // sorted + deduplicated

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom(std::size_t i) const { return atoms_[i]; }

  std::size_t index_of(std::string_view name) const;  // throws InvalidArgumentError
  std::optional<std::size_t> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  bool operator==(const Signature& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<std::string> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr make_signature(std::vector<std::string> atoms);

/// Immutable propositional formula over atoms, negation, conjunction,
/// disjunction and the contradiction constant. Subtrees are shared;
/// equality is syntactic.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or, Contradiction };

  static Formula atom(std::string name);
  static Formula contradiction();
  static Formula negate(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);

  Kind kind() const { return node_->kind; }
  const std::string& atom_name() const;  // Atom nodes only
  Formula child() const;                 // Not nodes only
  Formula left() const;                  // And/Or nodes only
  Formula right() const;

  std::size_t hash() const { return node_->hash; }
  std::size_t node_count() const { return node_->count; }
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  void collect_atoms(std::set<std::string>& out) const;
  std::set<std::string> atoms() const;

  /// Prints in the KB text grammar with minimal parentheses; parsing the
  /// result yields a syntactically identical formula.
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string name;  // Atom only
    std::shared_ptr<const Node> a, b;
    std::size_t hash;
    std::size_t count;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool node_equal(const Node* x, const Node* y);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Total two-valued assignment over a signature, stored as a bit vector in
/// signature order (atom i is bit i of the interpretation index).
class Interpretation {
 public:
  explicit Interpretation(SignaturePtr sig, bool fill = false);
  static Interpretation from_index(SignaturePtr sig, std::uint64_t index);

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  std::size_t size() const { return sig_->size(); }

  bool value(std::size_t atom_index) const;
  bool value(std::string_view atom) const { return value(sig_->index_of(atom)); }
  void set(std::size_t atom_index, bool v);

  /// Packs the assignment into an integer; requires at most 64 atoms.
  std::uint64_t index() const;

  bool operator==(const Interpretation& o) const;
  std::string to_string() const;

 private:
  SignaturePtr sig_;
  std::vector<std::uint64_t> words_;
};

/// Total assignment into {T, F, B}. Tracks the number of B-valued atoms.
class ThreeValuedInterpretation {
 public:
  explicit ThreeValuedInterpretation(SignaturePtr sig, TruthValue3 fill = TruthValue3::True);

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  std::size_t size() const { return sig_->size(); }

  TruthValue3 value(std::size_t atom_index) const { return values_[atom_index]; }
  TruthValue3 value(std::string_view atom) const { return values_[sig_->index_of(atom)]; }
  void set(std::size_t atom_index, TruthValue3 v);

  std::size_t both_count() const { return both_; }
  std::vector<std::size_t> both_atoms() const;

  std::string to_string() const;

 private:
  SignaturePtr sig_;
  std::vector<TruthValue3> values_;
  std::size_t both_ = 0;
};

/// Finite set of formulas with a canonical enumeration (insertion order).
/// Membership is syntactic: semantic duplicates are distinct elements, exact
/// duplicates are rejected at construction.
class KnowledgeBase {
 public:
  KnowledgeBase();
  explicit KnowledgeBase(std::vector<Formula> formulas);
  KnowledgeBase(std::vector<Formula> formulas, SignaturePtr sig);

  const std::vector<Formula>& formulas() const { return formulas_; }
  const Formula& formula(std::size_t i) const { return formulas_[i]; }
  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }

  bool contains(const Formula& f) const;

  /// Sub-knowledge-base over the same signature, preserving canonical order.
  KnowledgeBase subset(const std::vector<std::size_t>& indices) const;

 private:
  void check_distinct() const;

  std::vector<Formula> formulas_;
  SignaturePtr sig_;
};

// --- evaluation ----------------------------------------------------------

/// Classical evaluation. Contradiction is false under every interpretation.
bool eval2(const Interpretation& w, const Formula& f);

/// Three-valued evaluation following Priest's truth tables; Contradiction
/// evaluates to F.
TruthValue3 eval3(const ThreeValuedInterpretation& v, const Formula& f);

/// v satisfies f iff eval3(v, f) is T or B.
bool satisfies3(const ThreeValuedInterpretation& v, const Formula& f);
bool satisfies3(const ThreeValuedInterpretation& v, const KnowledgeBase& k);

}  // namespace ink
