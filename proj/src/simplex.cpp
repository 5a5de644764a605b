#include "ink/simplex.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "ink/kernels.hpp"

namespace ink::lp {

namespace {

// Row-major tableau. Column layout: structural vars, slack/surplus vars,
// artificial vars, rhs. Bland's rule: entering column = lowest index with
// negative reduced cost; leaving row = lowest basic variable among the
// minimum-ratio rows.
class Tableau {
 public:
  Tableau(const Problem& p, double tol) : tol_(tol), nstruct_(p.nvars), nrows_(p.rows.size()) {
    std::size_t nslack = 0;
    for (const auto& r : p.rows) {
      if (r.rel != Relation::Eq) ++nslack;
    }
    // artificials: one for every row whose canonical form lacks a +1 basis
    // column (>= rows and = rows)
    std::size_t nart = 0;
    for (const auto& r : p.rows) {
      const bool flipped = r.rhs < 0.0;
      Relation rel = flipped ? flip(r.rel) : r.rel;
      if (rel != Relation::LessEq) ++nart;
    }
    ncols_ = nstruct_ + nslack + nart;
    width_ = ncols_ + 1;
    rows_.assign((nrows_ + 1) * width_, 0.0);
    basis_.assign(nrows_, SIZE_MAX);

    std::size_t slack_at = nstruct_;
    std::size_t art_at = nstruct_ + nslack;
    art_begin_ = art_at;
    for (std::size_t i = 0; i < nrows_; ++i) {
      const auto& r = p.rows[i];
      double* row = row_ptr(i);
      const bool flipped = r.rhs < 0.0;
      const double sgn = flipped ? -1.0 : 1.0;
      for (std::size_t j = 0; j < nstruct_ && j < r.coeffs.size(); ++j) row[j] = sgn * r.coeffs[j];
      row[ncols_] = sgn * r.rhs;
      Relation rel = flipped ? flip(r.rel) : r.rel;
      switch (rel) {
        case Relation::LessEq:
          row[slack_at] = 1.0;
          basis_[i] = slack_at++;
          break;
        case Relation::GreaterEq:
          row[slack_at] = -1.0;
          ++slack_at;
          row[art_at] = 1.0;
          basis_[i] = art_at++;
          break;
        case Relation::Eq:
          row[art_at] = 1.0;
          basis_[i] = art_at++;
          break;
      }
    }
    nart_ = art_at - art_begin_;
  }

  /// Phase 1: minimize the sum of artificials. Returns false when the
  /// problem is infeasible.
  bool phase1() {
    if (nart_ == 0) return true;
    double* z = row_ptr(nrows_);
    std::fill(z, z + width_, 0.0);
    // objective: maximize -(sum of artificials); price out the artificial
    // basis by adding each artificial row
    for (std::size_t j = art_begin_; j < art_begin_ + nart_; ++j) z[j] = 1.0;
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (basis_[i] >= art_begin_) kernels::active().axpy(z, -1.0, row_ptr(i), width_);
    }
    pivot_loop(/*forbid_artificials=*/false);
    if (z[ncols_] < -tol_) return false;  // leftover artificial value
    // drive artificials that are still basic (at zero) out of the basis
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (basis_[i] < art_begin_) continue;
      double* row = row_ptr(i);
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::fabs(row[j]) > tol_) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) continue;  // redundant row; keep, it stays zero
      pivot(i, enter);
    }
    return true;
  }

  Status phase2(const std::vector<double>& objective) {
    double* z = row_ptr(nrows_);
    std::fill(z, z + width_, 0.0);
    for (std::size_t j = 0; j < nstruct_ && j < objective.size(); ++j) z[j] = -objective[j];
    // price out the current basis
    for (std::size_t i = 0; i < nrows_; ++i) {
      const double c = z[basis_[i]];
      if (std::fabs(c) > 0.0) kernels::active().axpy(z, -c, row_ptr(i), width_);
    }
    return pivot_loop(/*forbid_artificials=*/true);
  }

  double objective_value() const { return rows_[nrows_ * width_ + ncols_]; }

  std::vector<double> solution() const {
    std::vector<double> x(nstruct_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (basis_[i] < nstruct_) x[basis_[i]] = rows_[i * width_ + ncols_];
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  static Relation flip(Relation r) {
    switch (r) {
      case Relation::LessEq: return Relation::GreaterEq;
      case Relation::GreaterEq: return Relation::LessEq;
      case Relation::Eq: return Relation::Eq;
    }
    return r;
  }

  double* row_ptr(std::size_t i) { return rows_.data() + i * width_; }
  const double* row_ptr(std::size_t i) const { return rows_.data() + i * width_; }

  Status pivot_loop(bool forbid_artificials) {
    const std::size_t col_end = forbid_artificials ? art_begin_ : ncols_;
    for (;;) {
      const double* z = row_ptr(nrows_);
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < col_end; ++j) {  // Bland: first improving column
        if (z[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) return Status::Optimal;

      std::size_t leave = SIZE_MAX;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < nrows_; ++i) {
        const double a = rows_[i * width_ + enter];
        if (a > tol_) {
          const double ratio = rows_[i * width_ + ncols_] / a;
          if (ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ && (leave == SIZE_MAX || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == SIZE_MAX) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    ++pivots_;
    double* pr = row_ptr(prow);
    kernels::active().scale(pr, 1.0 / pr[pcol], width_);
    pr[pcol] = 1.0;
    for (std::size_t i = 0; i <= nrows_; ++i) {
      if (i == prow) continue;
      double* row = row_ptr(i);
      const double factor = row[pcol];
      if (factor != 0.0) {
        kernels::active().axpy(row, -factor, pr, width_);
        row[pcol] = 0.0;
      }
    }
    basis_[prow] = pcol;
  }

  double tol_;
  std::size_t nstruct_, nrows_, ncols_ = 0, width_ = 0;
  std::size_t art_begin_ = 0, nart_ = 0;
  std::vector<double> rows_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution maximize(const Problem& p, double pivot_tol) {
  Tableau t(p, pivot_tol);
  if (!t.phase1()) return {Status::Infeasible, 0.0, {}, t.pivots()};
  Status st = t.phase2(p.objective);
  if (st == Status::Unbounded) return {Status::Unbounded, 0.0, {}, t.pivots()};
  return {Status::Optimal, t.objective_value(), t.solution(), t.pivots()};
}

}  // namespace ink::lp
