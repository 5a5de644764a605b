#include "ink/sampler.hpp"

#include <algorithm>
#include <unordered_set>

#include "ink/rng.hpp"

namespace ink {

namespace {

std::vector<std::string> atom_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

struct ClausePlan {
  std::vector<std::size_t> atoms;  // indices into a name table
  std::vector<bool> negated;
};

// lengths uniform in the configured range clamped to the atom pool
ClausePlan random_clause(Rng& rng, std::size_t pool, std::pair<std::size_t, std::size_t> len_range) {
  const std::size_t lo = std::max<std::size_t>(1, std::min(len_range.first, pool));
  const std::size_t hi = std::max(lo, std::min(len_range.second, pool));
  const std::size_t len = lo + rng.index(hi - lo + 1);
  // partial Fisher-Yates over the pool
  std::vector<std::size_t> pick(pool);
  for (std::size_t i = 0; i < pool; ++i) pick[i] = i;
  ClausePlan c;
  for (std::size_t i = 0; i < len; ++i) {
    std::swap(pick[i], pick[i + rng.index(pool - i)]);
    c.atoms.push_back(pick[i]);
    c.negated.push_back(rng.coin());
  }
  return c;
}

Formula clause_formula(const ClausePlan& c, const std::vector<std::string>& names,
                       const std::vector<std::size_t>& order) {
  std::optional<Formula> f;
  for (std::size_t k : order) {
    Formula lit = Formula::atom(names[c.atoms[k]]);
    if (c.negated[k]) lit = Formula::negate(std::move(lit));
    f = f ? Formula::disj(std::move(*f), std::move(lit)) : std::move(lit);
  }
  return *f;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> o(n);
  for (std::size_t i = 0; i < n; ++i) o[i] = i;
  return o;
}

// number of clauses with distinct atoms and lengths in [lo,hi] over n atoms;
// saturates at `cap` to avoid overflow
std::uint64_t clause_space(std::size_t n, std::size_t lo, std::size_t hi, std::uint64_t cap) {
  std::uint64_t total = 0;
  for (std::size_t len = std::max<std::size_t>(1, lo); len <= std::min(hi, n); ++len) {
    // C(n, len) * 2^len, saturating
    long double combos = 1.0L;
    for (std::size_t i = 0; i < len; ++i) combos = combos * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    for (std::size_t i = 0; i < len; ++i) combos *= 2.0L;
    if (combos > static_cast<long double>(cap)) return cap;
    total += static_cast<std::uint64_t>(combos);
    if (total >= cap) return cap;
  }
  return total;
}

}  // namespace

KnowledgeBase sample_random_cnf(const SampleSpec& spec) {
  if (spec.target) throw InvalidArgumentError("sample_random_cnf: spec carries a target");
  if (spec.num_atoms == 0) throw InvalidArgumentError("sample_random_cnf: need at least one atom");
  const auto names = atom_names(spec.num_atoms);
  if (clause_space(spec.num_atoms, spec.clause_length.first, spec.clause_length.second,
                   spec.num_formulas) < spec.num_formulas) {
    throw InvalidArgumentError("sample_random_cnf: requested distinct formulas exceed the clause space");
  }
  Rng rng(spec.seed);
  std::vector<Formula> formulas;
  std::unordered_set<std::size_t> hashes;
  const std::size_t retry_cap = 100 * std::max<std::size_t>(1, spec.num_formulas);
  std::size_t attempts = 0;
  while (formulas.size() < spec.num_formulas) {
    if (++attempts > retry_cap) {
      throw InvalidArgumentError("sample_random_cnf: rejection sampling exhausted its retry budget");
    }
    ClausePlan plan = random_clause(rng, spec.num_atoms, spec.clause_length);
    Formula f = clause_formula(plan, names, identity_order(plan.atoms.size()));
    bool dup = false;
    if (hashes.count(f.hash())) {
      for (const Formula& g : formulas) {
        if (g == f) {
          dup = true;
          break;
        }
      }
    }
    if (dup) continue;
    hashes.insert(f.hash());
    formulas.push_back(std::move(f));
  }
  return KnowledgeBase(std::move(formulas), make_signature(names));
}

namespace {

// literal sequence of the i-th mode pattern over mode atoms 0..b-1
std::vector<Formula> mode_literals(std::size_t pattern, std::size_t b, const std::vector<std::string>& names) {
  std::vector<Formula> lits;
  for (std::size_t bit = 0; bit < b; ++bit) {
    Formula a = Formula::atom(names[bit]);
    lits.push_back(((pattern >> bit) & 1) ? a : Formula::negate(a));
  }
  return lits;
}

// A syntactic variant of (conjuncts...): random order, optional duplicated
// conjuncts, random disjunct order inside the clause. Semantics unchanged.
Formula group_variant(const std::vector<Formula>& mode_lits, const ClausePlan& payload,
                      const std::vector<std::string>& names, Rng& rng, std::size_t extra_repeats) {
  std::vector<Formula> conjuncts = mode_lits;
  std::vector<std::size_t> order = identity_order(payload.atoms.size());
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  conjuncts.push_back(clause_formula(payload, names, order));
  for (std::size_t r = 0; r < extra_repeats; ++r) {
    conjuncts.push_back(conjuncts[rng.index(conjuncts.size())]);
  }
  for (std::size_t i = conjuncts.size(); i > 1; --i) std::swap(conjuncts[i - 1], conjuncts[rng.index(i)]);
  Formula f = conjuncts[0];
  for (std::size_t i = 1; i < conjuncts.size(); ++i) f = Formula::conj(std::move(f), conjuncts[i]);
  return f;
}

}  // namespace

KnowledgeBase sample_with_hs_value(const SampleSpec& spec) {
  if (!spec.target || spec.target->measure != TargetMeasure::Hs) {
    throw InvalidArgumentError("sample_with_hs_value: spec needs an hs target");
  }
  const std::size_t v = spec.target->value;
  Rng rng(spec.seed);
  const auto names = atom_names(spec.num_atoms);

  if (v == 0) {
    // consistent KB: clauses with at least one positive literal are all
    // satisfied by the all-true assignment
    if (spec.num_atoms == 0) throw InvalidArgumentError("sample_with_hs_value: need at least one atom");
    std::vector<Formula> formulas;
    std::unordered_set<std::size_t> hashes;
    const std::size_t retry_cap = 100 * std::max<std::size_t>(1, spec.num_formulas);
    std::size_t attempts = 0;
    while (formulas.size() < spec.num_formulas) {
      if (++attempts > retry_cap) {
        throw InvalidArgumentError("sample_with_hs_value: retry budget exhausted; not enough distinct clauses");
      }
      ClausePlan plan = random_clause(rng, spec.num_atoms, spec.clause_length);
      bool positive = false;
      for (bool neg : plan.negated) positive = positive || !neg;
      if (!positive) plan.negated[rng.index(plan.negated.size())] = false;
      Formula f = clause_formula(plan, names, identity_order(plan.atoms.size()));
      bool dup = false;
      if (hashes.count(f.hash())) {
        for (const Formula& g : formulas) {
          if (g == f) {
            dup = true;
            break;
          }
        }
      }
      if (dup) continue;
      hashes.insert(f.hash());
      formulas.push_back(std::move(f));
    }
    return KnowledgeBase(std::move(formulas), make_signature(names));
  }

  std::size_t b = 0;
  while ((std::size_t{1} << b) < v + 1) ++b;
  if (spec.num_atoms < b + 1) {
    throw InvalidArgumentError("sample_with_hs_value: need at least " + std::to_string(b + 1) +
                               " atoms for target " + std::to_string(v));
  }
  if (spec.num_formulas < v + 1) {
    throw InvalidArgumentError("sample_with_hs_value: need at least one formula per group (" +
                               std::to_string(v + 1) + ")");
  }

  const std::size_t payload_atoms = spec.num_atoms - b;
  const std::size_t groups = v + 1;

  // one payload clause per group, over the payload atoms (names after the
  // mode block)
  std::vector<std::string> payload_names(names.begin() + static_cast<std::ptrdiff_t>(b), names.end());
  std::vector<ClausePlan> payloads;
  for (std::size_t gi = 0; gi < groups; ++gi) {
    payloads.push_back(random_clause(rng, payload_atoms, spec.clause_length));
  }

  std::vector<Formula> formulas;
  std::unordered_set<std::size_t> hashes;
  const std::size_t retry_cap = 200 * std::max<std::size_t>(1, spec.num_formulas);
  std::size_t attempts = 0;
  for (std::size_t j = 0; j < spec.num_formulas; ++j) {
    const std::size_t gi = j * groups / spec.num_formulas;  // contiguous groups in canonical order
    const auto mode = mode_literals(gi, b, names);
    for (std::size_t local = 0;; ++local) {
      if (++attempts > retry_cap) {
        throw InvalidArgumentError("sample_with_hs_value: variant space exhausted");
      }
      // escalating repeat count keeps the variant space ahead of large groups
      const std::size_t extra = rng.index(3 + local / 4);
      Formula f = group_variant(mode, payloads[gi], payload_names, rng, extra);
      bool dup = false;
      if (hashes.count(f.hash())) {
        for (const Formula& g : formulas) {
          if (g == f) {
            dup = true;
            break;
          }
        }
      }
      if (!dup) {
        hashes.insert(f.hash());
        formulas.push_back(std::move(f));
        break;
      }
    }
  }
  return KnowledgeBase(std::move(formulas), make_signature(names));
}

KnowledgeBase sample_with_c_value(const SampleSpec& spec) {
  if (!spec.target || spec.target->measure != TargetMeasure::C) {
    throw InvalidArgumentError("sample_with_c_value: spec needs a c target");
  }
  const std::size_t t = spec.target->value;
  if (spec.num_atoms == 0) throw InvalidArgumentError("sample_with_c_value: need at least one atom");
  if (t > 0 && t > spec.num_atoms - 1) {
    throw InvalidArgumentError("sample_with_c_value: target " + std::to_string(t) +
                               " needs more atoms than " + std::to_string(spec.num_atoms));
  }
  if (spec.num_formulas < 2 * t) {
    throw InvalidArgumentError("sample_with_c_value: need at least " + std::to_string(2 * t) +
                               " formulas for the conflict pairs");
  }
  Rng rng(spec.seed);
  const auto names = atom_names(spec.num_atoms);

  std::vector<Formula> formulas;
  for (std::size_t i = 0; i < t; ++i) {
    formulas.push_back(Formula::atom(names[i]));
    formulas.push_back(Formula::negate(Formula::atom(names[i])));
  }

  const std::size_t rest_atoms = spec.num_atoms - t;
  std::vector<std::string> rest_names(names.begin() + static_cast<std::ptrdiff_t>(t), names.end());
  std::unordered_set<std::size_t> hashes;
  for (const Formula& f : formulas) hashes.insert(f.hash());
  const std::size_t retry_cap = 100 * std::max<std::size_t>(1, spec.num_formulas);
  std::size_t attempts = 0;
  while (formulas.size() < spec.num_formulas) {
    if (++attempts > retry_cap) {
      throw InvalidArgumentError("sample_with_c_value: retry budget exhausted; not enough distinct clauses");
    }
    if (rest_atoms == 0) {
      throw InvalidArgumentError("sample_with_c_value: no atoms left for the satisfiable remainder");
    }
    ClausePlan plan = random_clause(rng, rest_atoms, spec.clause_length);
    // at least one positive literal keeps the remainder satisfied by the
    // all-true hidden assignment, so no extra B atoms are ever forced
    bool positive = false;
    for (bool neg : plan.negated) positive = positive || !neg;
    if (!positive) plan.negated[rng.index(plan.negated.size())] = false;
    Formula f = clause_formula(plan, rest_names, identity_order(plan.atoms.size()));
    bool dup = false;
    if (hashes.count(f.hash())) {
      for (const Formula& g : formulas) {
        if (g == f) {
          dup = true;
          break;
        }
      }
    }
    if (dup) continue;
    hashes.insert(f.hash());
    formulas.push_back(std::move(f));
  }
  return KnowledgeBase(std::move(formulas), make_signature(names));
}

KnowledgeBase sample(const SampleSpec& spec) {
  if (!spec.target) return sample_random_cnf(spec);
  return spec.target->measure == TargetMeasure::Hs ? sample_with_hs_value(spec) : sample_with_c_value(spec);
}

}  // namespace ink
