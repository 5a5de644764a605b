#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "ink/formula.hpp"
#include "ink/sat.hpp"

namespace ink {

/// The minimal inconsistent subsets of a knowledge base, as index sets into
/// the canonical enumeration. Members are sorted; the collection is an
/// antichain (no member contains another).
struct MISet {
  std::vector<std::vector<std::size_t>> sets;
  bool truncated = false;  // limit or budget cut the enumeration short

  std::size_t count() const { return sets.size(); }
};

struct MiEnumOptions {
  std::optional<std::size_t> limit;                       // max number of MIs
  std::optional<std::chrono::milliseconds> time_budget;   // wall-clock cap
  sat::SatOptions sat;
};

/// Deletion-based shrink of an inconsistent seed to a minimal inconsistent
/// subset, scanning in canonical-enumeration order. Throws when the seed is
/// consistent.
std::vector<std::size_t> shrink_to_mus(const KnowledgeBase& kb, std::vector<std::size_t> seed,
                                       const sat::SatOptions& opts = {});

/// MARCO-style complete enumeration of MI(K): a SAT map over selector
/// variables tracks unexplored subsets; consistent seeds grow to maximal
/// satisfiable subsets (blocked down), inconsistent seeds shrink to MUSes
/// (blocked up). Complete when no limit/budget interrupts; otherwise the
/// result carries a truncation flag.
MISet enumerate_mi(const KnowledgeBase& kb, const MiEnumOptions& opts = {});

/// Indices of formulas appearing in no minimal inconsistent subset.
std::vector<std::size_t> free_formulas(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

}  // namespace ink
