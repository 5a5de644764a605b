#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ink/formula.hpp"

namespace ink {

enum class TargetMeasure { Hs, C };

struct SampleTarget {
  TargetMeasure measure;
  std::size_t value;
};

struct SampleSpec {
  std::size_t num_formulas = 0;
  std::size_t num_atoms = 0;
  std::pair<std::size_t, std::size_t> clause_length{2, 4};
  std::uint64_t seed = 0;
  std::optional<SampleTarget> target;
};

/// Random CNF knowledge base: num_formulas distinct disjunctions of literals
/// over atoms x1..xN, clause lengths uniform in the configured range,
/// literals uniform without repeated atoms per clause. Deterministic per
/// seed. Throws when the requested number of distinct clauses exceeds the
/// clause space.
KnowledgeBase sample_random_cnf(const SampleSpec& spec);

/// Knowledge base with i_hs(K) = target exactly. Construction: b mode atoms
/// split the formulas into v+1 groups; group i asserts the i-th mode-bit
/// pattern conjoined with the group's payload clause. Distinct groups are
/// pairwise inconsistent and internally consistent, forcing h_K = v+1.
/// Formulas inside a group are syntactic variants of the same assertion, so
/// any model of one satisfies all of them (the population approximators then
/// converge the way the accuracy experiments expect).
KnowledgeBase sample_with_hs_value(const SampleSpec& spec);

/// Knowledge base with i_c(K) = target exactly: unit conflict pairs a_i and
/// !a_i on t conflict atoms force exactly t B-assignments; the remaining
/// formulas are clauses over the other atoms, each containing a positive
/// literal so the all-true assignment satisfies them.
KnowledgeBase sample_with_c_value(const SampleSpec& spec);

/// Dispatch on spec.target.
KnowledgeBase sample(const SampleSpec& spec);

}  // namespace ink
