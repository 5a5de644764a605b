#include "ink/formula.hpp"

#include <algorithm>
#include <cctype>

namespace ink {

std::string to_string(TruthValue3 v) {
  switch (v) {
    case TruthValue3::True: return "T";
    case TruthValue3::False: return "F";
    case TruthValue3::Both: return "B";
  }
  return "?";
}

bool is_valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return name != "false";  // reserved for the contradiction constant
}

// --- Signature ------------------------------------------------------------

Signature::Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  index_.reserve(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!is_valid_atom_name(atoms_[i])) throw InvalidArgumentError("invalid atom name: " + atoms_[i]);
    index_.emplace(atoms_[i], i);
  }
}

std::size_t Signature::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InvalidArgumentError("atom not in signature: " + std::string(name));
  return it->second;
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SignaturePtr make_signature(std::vector<std::string> atoms) {
  return std::make_shared<const Signature>(std::move(atoms));
}

// --- Formula ---------------------------------------------------------------

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name)) throw InvalidArgumentError("invalid atom name: " + name);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  n->hash = hash_combine(std::hash<std::string>{}(n->name), 0x41);
  n->count = 1;
  return Formula(std::move(n));
}

Formula Formula::contradiction() {
  static const std::shared_ptr<const Node> instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Contradiction;
    n->hash = 0xc0417ad1c7104ULL;
    n->count = 1;
    return n;
  }();
  return Formula(instance);
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->a = f.node_;
  n->hash = hash_combine(f.hash(), 0x21);
  n->count = f.node_count() + 1;
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->a = lhs.node_;
  n->b = rhs.node_;
  n->hash = hash_combine(hash_combine(lhs.hash(), rhs.hash()), 0x26);
  n->count = lhs.node_count() + rhs.node_count() + 1;
  return Formula(std::move(n));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->a = lhs.node_;
  n->b = rhs.node_;
  n->hash = hash_combine(hash_combine(lhs.hash(), rhs.hash()), 0x7c);
  n->count = lhs.node_count() + rhs.node_count() + 1;
  return Formula(std::move(n));
}

const std::string& Formula::atom_name() const {
  if (kind() != Kind::Atom) throw InvalidArgumentError("atom_name on non-atom formula");
  return node_->name;
}

Formula Formula::child() const {
  if (kind() != Kind::Not) throw InvalidArgumentError("child on non-negation formula");
  return Formula(node_->a);
}

Formula Formula::left() const {
  if (kind() != Kind::And && kind() != Kind::Or) throw InvalidArgumentError("left on leaf formula");
  return Formula(node_->a);
}

Formula Formula::right() const {
  if (kind() != Kind::And && kind() != Kind::Or) throw InvalidArgumentError("right on leaf formula");
  return Formula(node_->b);
}

bool Formula::node_equal(const Node* x, const Node* y) {
  if (x == y) return true;
  if (x->kind != y->kind || x->hash != y->hash || x->count != y->count) return false;
  switch (x->kind) {
    case Kind::Atom: return x->name == y->name;
    case Kind::Contradiction: return true;
    case Kind::Not: return node_equal(x->a.get(), y->a.get());
    case Kind::And:
    case Kind::Or: return node_equal(x->a.get(), y->a.get()) && node_equal(x->b.get(), y->b.get());
  }
  return false;
}

bool Formula::operator==(const Formula& o) const { return node_equal(node_.get(), o.node_.get()); }

void Formula::collect_atoms(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Atom: out.insert(node_->name); return;
    case Kind::Contradiction: return;
    case Kind::Not: child().collect_atoms(out); return;
    case Kind::And:
    case Kind::Or:
      left().collect_atoms(out);
      right().collect_atoms(out);
      return;
  }
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(out);
  return out;
}

namespace {

// precedence levels: or = 0, and = 1, not/leaf = 2
void print_node(const Formula& f, int parent_level, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: out += f.atom_name(); return;
    case Formula::Kind::Contradiction: out += "false"; return;
    case Formula::Kind::Not:
      out += '!';
      print_node(f.child(), 2, out);
      return;
    case Formula::Kind::And: {
      const bool paren = parent_level > 1;
      if (paren) out += '(';
      print_node(f.left(), 1, out);
      out += " & ";
      // a right-hand conjunction needs parens: the grammar is left-associative
      print_node(f.right(), 2, out);
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::Or: {
      const bool paren = parent_level > 0;
      if (paren) out += '(';
      print_node(f.left(), 0, out);
      out += " | ";
      print_node(f.right(), 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_node(*this, 0, out);
  return out;
}

// --- Interpretation ---------------------------------------------------------

Interpretation::Interpretation(SignaturePtr sig, bool fill) : sig_(std::move(sig)) {
  words_.assign((sig_->size() + 63) / 64, fill ? ~std::uint64_t{0} : 0);
  if (fill && sig_->size() % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (sig_->size() % 64)) - 1;
  }
}

Interpretation Interpretation::from_index(SignaturePtr sig, std::uint64_t index) {
  Interpretation w(std::move(sig));
  const std::size_t n = w.sig_->size();
  if (n > 64) throw InvalidArgumentError("from_index requires at most 64 atoms");
  if (!w.words_.empty()) w.words_[0] = (n == 64) ? index : (index & ((std::uint64_t{1} << n) - 1));
  return w;
}

bool Interpretation::value(std::size_t atom_index) const {
  return (words_[atom_index / 64] >> (atom_index % 64)) & 1;
}

void Interpretation::set(std::size_t atom_index, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (atom_index % 64);
  if (v)
    words_[atom_index / 64] |= mask;
  else
    words_[atom_index / 64] &= ~mask;
}

std::uint64_t Interpretation::index() const {
  if (sig_->size() > 64) throw InvalidArgumentError("index requires at most 64 atoms");
  return words_.empty() ? 0 : words_[0];
}

bool Interpretation::operator==(const Interpretation& o) const {
  return *sig_ == *o.sig_ && words_ == o.words_;
}

std::string Interpretation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sig_->size(); ++i) {
    if (i) out += ' ';
    out += sig_->atom(i) + '=' + (value(i) ? '1' : '0');
  }
  return out;
}

// --- ThreeValuedInterpretation ----------------------------------------------

ThreeValuedInterpretation::ThreeValuedInterpretation(SignaturePtr sig, TruthValue3 fill)
    : sig_(std::move(sig)), values_(sig_->size(), fill) {
  both_ = (fill == TruthValue3::Both) ? values_.size() : 0;
}

void ThreeValuedInterpretation::set(std::size_t atom_index, TruthValue3 v) {
  if (values_[atom_index] == TruthValue3::Both) --both_;
  values_[atom_index] = v;
  if (v == TruthValue3::Both) ++both_;
}

std::vector<std::size_t> ThreeValuedInterpretation::both_atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == TruthValue3::Both) out.push_back(i);
  }
  return out;
}

std::string ThreeValuedInterpretation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sig_->size(); ++i) {
    if (i) out += ' ';
    out += sig_->atom(i) + '=' + ink::to_string(values_[i]);
  }
  return out;
}

// --- KnowledgeBase -----------------------------------------------------------

KnowledgeBase::KnowledgeBase() : sig_(make_signature({})) {}

KnowledgeBase::KnowledgeBase(std::vector<Formula> formulas) : formulas_(std::move(formulas)) {
  std::set<std::string> atoms;
  for (const Formula& f : formulas_) f.collect_atoms(atoms);
  sig_ = make_signature({atoms.begin(), atoms.end()});
  check_distinct();
}

KnowledgeBase::KnowledgeBase(std::vector<Formula> formulas, SignaturePtr sig)
    : formulas_(std::move(formulas)), sig_(std::move(sig)) {
  for (const Formula& f : formulas_) {
    for (const std::string& a : f.atoms()) {
      if (!sig_->contains(a)) throw InvalidArgumentError("formula atom outside signature: " + a);
    }
  }
  check_distinct();
}

void KnowledgeBase::check_distinct() const {
  std::unordered_multimap<std::size_t, const Formula*> seen;
  seen.reserve(formulas_.size());
  for (const Formula& f : formulas_) {
    auto [lo, hi] = seen.equal_range(f.hash());
    for (auto it = lo; it != hi; ++it) {
      if (*it->second == f) {
        throw InvalidArgumentError("duplicate formula in knowledge base: " + f.to_string());
      }
    }
    seen.emplace(f.hash(), &f);
  }
}

bool KnowledgeBase::contains(const Formula& f) const {
  return std::any_of(formulas_.begin(), formulas_.end(), [&](const Formula& g) { return g == f; });
}

KnowledgeBase KnowledgeBase::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Formula> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(formulas_.at(i));
  return KnowledgeBase(std::move(out), sig_);
}

// --- evaluation ---------------------------------------------------------------

bool eval2(const Interpretation& w, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return w.value(f.atom_name());
    case Formula::Kind::Contradiction: return false;
    case Formula::Kind::Not: return !eval2(w, f.child());
    case Formula::Kind::And: return eval2(w, f.left()) && eval2(w, f.right());
    case Formula::Kind::Or: return eval2(w, f.left()) || eval2(w, f.right());
  }
  return false;
}

namespace {

// (p, q) encoding of three-valued values: p = "value in {T,B}",
// q = "value in {F,B}". T=(1,0), F=(0,1), B=(1,1). Negation swaps the
// planes; conjunction is (p1&p2, q1|q2); disjunction is (p1|p2, q1&q2).
// This matches Priest's truth tables row for row.
struct PQ {
  bool p, q;
};

PQ eval3_pq(const ThreeValuedInterpretation& v, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      TruthValue3 t = v.value(f.atom_name());
      return {t != TruthValue3::False, t != TruthValue3::True};
    }
    case Formula::Kind::Contradiction: return {false, true};
    case Formula::Kind::Not: {
      PQ c = eval3_pq(v, f.child());
      return {c.q, c.p};
    }
    case Formula::Kind::And: {
      PQ a = eval3_pq(v, f.left());
      PQ b = eval3_pq(v, f.right());
      return {a.p && b.p, a.q || b.q};
    }
    case Formula::Kind::Or: {
      PQ a = eval3_pq(v, f.left());
      PQ b = eval3_pq(v, f.right());
      return {a.p || b.p, a.q && b.q};
    }
  }
  return {false, true};
}

}  // namespace

TruthValue3 eval3(const ThreeValuedInterpretation& v, const Formula& f) {
  PQ r = eval3_pq(v, f);
  if (r.p && r.q) return TruthValue3::Both;
  return r.p ? TruthValue3::True : TruthValue3::False;
}

bool satisfies3(const ThreeValuedInterpretation& v, const Formula& f) { return eval3_pq(v, f).p; }

bool satisfies3(const ThreeValuedInterpretation& v, const KnowledgeBase& k) {
  for (const Formula& f : k.formulas()) {
    if (!satisfies3(v, f)) return false;
  }
  return true;
}

}  // namespace ink
