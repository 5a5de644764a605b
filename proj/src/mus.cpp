#include "ink/mus.hpp"

#include <algorithm>

namespace ink {

namespace {

bool subset_consistent(const KnowledgeBase& kb, const std::vector<std::size_t>& indices,
                       const sat::SatOptions& opts) {
  return sat::is_consistent_subset(kb, indices, opts);
}

}  // namespace

std::vector<std::size_t> shrink_to_mus(const KnowledgeBase& kb, std::vector<std::size_t> seed,
                                       const sat::SatOptions& opts) {
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  if (subset_consistent(kb, seed, opts)) {
    throw InvalidArgumentError("shrink_to_mus: seed subset is consistent");
  }
  // canonical order scan; keep a formula only if dropping it restores
  // consistency
  std::size_t i = 0;
  while (i < seed.size()) {
    std::vector<std::size_t> without = seed;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (!subset_consistent(kb, without, opts)) {
      seed = std::move(without);
    } else {
      ++i;
    }
  }
  return seed;
}

MISet enumerate_mi(const KnowledgeBase& kb, const MiEnumOptions& opts) {
  const std::size_t n = kb.size();
  MISet result;
  const auto start = std::chrono::steady_clock::now();
  auto out_of_budget = [&]() {
    return opts.time_budget && std::chrono::steady_clock::now() - start >= *opts.time_budget;
  };

  // Selector map: one variable per formula. No clauses yet means every
  // subset is unexplored.
  sat::Cnf map;
  map.nvars = static_cast<std::int32_t>(n);

  sat::DpllOptions map_opts;
  map_opts.phase_true_first = true;  // bias seeds toward maximal subsets
  map_opts.max_propagations = opts.sat.budget_propagations;

  for (;;) {
    if (opts.limit && result.sets.size() >= *opts.limit) {
      result.truncated = true;
      break;
    }
    if (out_of_budget()) {
      result.truncated = true;
      break;
    }
    sat::SolveResult map_res = sat::solve_dpll(map, map_opts);
    if (map_res.status == sat::SolveStatus::BudgetExceeded) {
      result.truncated = true;
      break;
    }
    if (map_res.status == sat::SolveStatus::Unsat) break;  // fully explored

    std::vector<std::size_t> seed;
    for (std::size_t i = 0; i < n; ++i) {
      if (map_res.model[i]) seed.push_back(i);
    }

    if (subset_consistent(kb, seed, opts.sat)) {
      // grow to a maximal satisfiable subset, then require any future seed
      // to pick something outside it
      std::vector<bool> in_seed(n, false);
      for (std::size_t i : seed) in_seed[i] = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (in_seed[i]) continue;
        seed.push_back(i);
        if (subset_consistent(kb, seed, opts.sat)) {
          in_seed[i] = true;
        } else {
          seed.pop_back();
        }
        if (out_of_budget()) break;
      }
      std::vector<sat::Lit> block;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_seed[i]) block.push_back(sat::make_lit(static_cast<std::int32_t>(i), false));
      }
      map.add_clause(std::move(block));  // empty when the whole KB is consistent
    } else {
      std::vector<std::size_t> mus = shrink_to_mus(kb, std::move(seed), opts.sat);
      std::vector<sat::Lit> block;
      block.reserve(mus.size());
      for (std::size_t i : mus) block.push_back(sat::make_lit(static_cast<std::int32_t>(i), true));
      map.add_clause(std::move(block));
      result.sets.push_back(std::move(mus));
    }
  }

  std::sort(result.sets.begin(), result.sets.end());
  return result;
}

std::vector<std::size_t> free_formulas(const KnowledgeBase& kb, const sat::SatOptions& opts) {
  MiEnumOptions mopts;
  mopts.sat = opts;
  MISet mis = enumerate_mi(kb, mopts);
  std::vector<bool> in_mi(kb.size(), false);
  for (const auto& m : mis.sets) {
    for (std::size_t i : m) in_mi[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (!in_mi[i]) out.push_back(i);
  }
  return out;
}

}  // namespace ink
