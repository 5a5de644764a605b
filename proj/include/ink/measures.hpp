#pragma once

#include <string>
#include <vector>

#include "ink/formula.hpp"
#include "ink/sat.hpp"

namespace ink {

/// Non-negative inconsistency value, finite or +infinity. Infinity is a
/// distinct state, never a float; it serializes as the string "inf".
class InconsistencyValue {
 public:
  static InconsistencyValue finite(double v);
  static InconsistencyValue infinite() { return InconsistencyValue(0.0, true); }

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws on infinity

  /// Numeric view with infinity mapped to +inf (plots, comparisons).
  double as_double() const;

  bool operator==(const InconsistencyValue& o) const;
  bool operator<(const InconsistencyValue& o) const;
  bool operator<=(const InconsistencyValue& o) const { return *this < o || *this == o; }

  std::string to_string() const;

 private:
  InconsistencyValue(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Set of interpretations jointly satisfying a knowledge base: every formula
/// has at least one member model.
struct HittingSet {
  std::vector<Interpretation> interpretations;
};

/// Disjoint index blocks covering the knowledge base; for consistent
/// partitionings every block is consistent.
struct Partitioning {
  std::vector<std::vector<std::size_t>> blocks;
};

/// Probability function over the interpretations of a signature.
/// Weights sum to one (within 1e-9).
class ProbabilityFunction {
 public:
  ProbabilityFunction(SignaturePtr sig, std::vector<double> weights);

  const Signature& signature() const { return *sig_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::uint64_t interpretation_index) const { return weights_[interpretation_index]; }

  /// P(f) = sum of the weights of the models of f.
  double probability(const Formula& f) const;

 private:
  SignaturePtr sig_;
  std::vector<double> weights_;
};

struct EtaOptions {
  std::size_t signature_cap = 12;  // 2^cap LP columns
  double lp_pivot_tolerance = 1e-9;
  sat::SatOptions sat;
};

// --- exact measures ---------------------------------------------------------

/// Number of minimal inconsistent subsets.
InconsistencyValue i_mi(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

/// Sum of reciprocal cardinalities of the minimal inconsistent subsets.
InconsistencyValue i_mi_c(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

/// Contension: minimum number of B-valued atoms over all three-valued models.
InconsistencyValue i_c(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

/// Hitting-set measure: h_K - 1 where h_K is the cardinality of a
/// card-minimal hitting set; +infinity iff some formula is unsatisfiable.
InconsistencyValue i_hs(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

/// One minus the best probability threshold simultaneously achievable for
/// all formulas. Throws SignatureTooLargeError beyond the configured cap.
InconsistencyValue i_eta(const KnowledgeBase& kb, const EtaOptions& opts = {});

struct EtaWitness {
  InconsistencyValue value;
  ProbabilityFunction distribution;
};
EtaWitness i_eta_with_witness(const KnowledgeBase& kb, const EtaOptions& opts = {});

/// A hitting set of cardinality h_K. Throws ContradictionError when the
/// knowledge base contains an unsatisfiable formula.
HittingSet min_hitting_set(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

/// A consistent partitioning with h_K blocks (card-minimal).
Partitioning min_consistent_partition(const KnowledgeBase& kb, const sat::SatOptions& opts = {});

// --- exhaustive oracles -------------------------------------------------------

/// Exhaustive contension over all 3^n three-valued assignments (n <= 10).
InconsistencyValue i_c_bruteforce(const KnowledgeBase& kb);

/// Exhaustive hitting-set search over model bitmaps (n <= 10 atoms,
/// at most 12 formulas).
InconsistencyValue i_hs_bruteforce(const KnowledgeBase& kb);

}  // namespace ink
