#pragma once

// Exact two-phase tableau simplex over rationals with Bland's rule.

#include <cstddef>
#include <optional>
#include <vector>

#include "flexlist/error.hpp"
#include "flexlist/rational.hpp"

namespace flexlist {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LPInstance {
  bool maximize = true;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Sense> senses;
  std::vector<Rational> rhs;
  /// Per-variable bounds; an empty optional is infinite. Defaults to [0, +inf).
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  std::size_t variable_count() const noexcept { return objective.size(); }

  std::size_t add_variable(const Rational& cost, std::optional<Rational> lo = Rational(0),
                           std::optional<Rational> hi = std::nullopt) {
    objective.push_back(cost);
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    for (auto& row : rows) row.emplace_back(0);
    return objective.size() - 1;
  }

  std::size_t add_constraint(std::vector<Rational> coefficients, Sense sense, const Rational& bound) {
    coefficients.resize(objective.size());
    rows.push_back(std::move(coefficients));
    senses.push_back(sense);
    rhs.push_back(bound);
    return rows.size() - 1;
  }

  void validate() const {
    const std::size_t n = objective.size();
    require(lower.size() == n && upper.size() == n, ErrorKind::InvalidArgument, "bound vectors have wrong size");
    require(senses.size() == rows.size() && rhs.size() == rows.size(), ErrorKind::InvalidArgument,
            "row metadata has wrong size");
    for (const auto& row : rows) require(row.size() == n, ErrorKind::InvalidArgument, "ragged constraint matrix");
    for (std::size_t j = 0; j < n; ++j)
      if (lower[j] && upper[j])
        require(*lower[j] <= *upper[j], ErrorKind::InvalidArgument, "empty variable range");
  }
};

struct LPSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> primal;
  /// Shadow price of each original row: d(optimum)/d(rhs_i).
  std::vector<Rational> dual;
  std::size_t pivots = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, std::vector<Rational>(cols + 1)), d_(cols + 1), basis_(rows, 0), cols_(cols) {}

  std::vector<std::vector<Rational>>& rows() { return t_; }
  std::vector<Rational>& costs() { return d_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t cols() const { return cols_; }
  const Rational& rhs(std::size_t i) const { return t_[i][cols_]; }

  enum class Outcome { Optimal, Unbounded };

  /// Maximises with reduced costs in d_; columns flagged in `blocked` never enter.
  Outcome optimise(const std::vector<char>& blocked, std::size_t& pivots) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!blocked[j] && d_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return Outcome::Optimal;
      std::size_t leave = t_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == t_.size() || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == t_.size()) return Outcome::Unbounded;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t_[row];
    Rational inv = 1 / pr[col];
    for (auto& x : pr) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rational f = t_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != 0) t_[i][j] -= f * pr[j];
    }
    if (d_[col] != 0) {
      Rational f = d_[col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != 0) d_[j] -= f * pr[j];
    }
    basis_[row] = col;
  }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> d_;  // reduced costs; last entry holds -objective
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

inline LPSolution simplex_solve(const LPInstance& lp) {
  lp.validate();
  const std::size_t n = lp.variable_count();
  const Rational direction = lp.maximize ? 1 : -1;

  // Substitute every variable by nonnegative ones: x = offset + sum coef * x'.
  struct Part {
    std::size_t column;
    int coef;
  };
  std::vector<std::vector<Part>> parts(n);
  std::vector<Rational> offset(n, Rational(0));
  std::size_t structural = 0;
  std::vector<std::pair<std::size_t, Rational>> upper_rows;  // column, bound
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j]) {
      offset[j] = *lp.lower[j];
      parts[j].push_back({structural, +1});
      if (lp.upper[j]) upper_rows.emplace_back(structural, *lp.upper[j] - *lp.lower[j]);
      ++structural;
    } else if (lp.upper[j]) {
      offset[j] = *lp.upper[j];
      parts[j].push_back({structural++, -1});
    } else {
      parts[j].push_back({structural++, +1});
      parts[j].push_back({structural++, -1});
    }
  }

  struct Row {
    std::vector<Rational> a;
    Sense sense;
    Rational b;
    int sign;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    Row row{std::vector<Rational>(structural), lp.senses[i], lp.rhs[i], 1};
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = lp.rows[i][j];
      if (a == 0) continue;
      row.b -= a * offset[j];
      for (auto p : parts[j]) row.a[p.column] += a * p.coef;
    }
    rows.push_back(std::move(row));
  }
  for (auto& [column, bound] : upper_rows) {
    Row row{std::vector<Rational>(structural), Sense::LessEqual, bound, 1};
    row.a[column] = 1;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows)
    if (row.b < 0) {
      row.sign = -1;
      row.b = -row.b;
      for (auto& x : row.a) x = -x;
      if (row.sense == Sense::LessEqual) row.sense = Sense::GreaterEqual;
      else if (row.sense == Sense::GreaterEqual) row.sense = Sense::LessEqual;
    }

  const std::size_t m = rows.size();
  std::size_t cols = structural;
  std::vector<std::size_t> identity(m), surplus(m, SIZE_MAX);
  std::vector<char> artificial;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].sense == Sense::GreaterEqual) surplus[i] = cols++;
    identity[i] = cols++;
  }
  artificial.assign(cols, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].sense != Sense::LessEqual) artificial[identity[i]] = 1;

  detail::Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    auto& tr = tab.rows()[i];
    for (std::size_t j = 0; j < structural; ++j) tr[j] = rows[i].a[j];
    if (surplus[i] != SIZE_MAX) tr[surplus[i]] = -1;
    tr[identity[i]] = 1;
    tr[cols] = rows[i].b;
    tab.basis()[i] = identity[i];
  }

  LPSolution solution;
  // Phase 1: maximise -(sum of artificials).
  auto& d = tab.costs();
  for (std::size_t j = 0; j <= cols; ++j) d[j] = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!artificial[identity[i]]) continue;
    for (std::size_t j = 0; j <= cols; ++j)
      if (j == cols || !artificial[j]) d[j] += tab.rows()[i][j];
  }
  std::vector<char> none(cols, 0);
  tab.optimise(none, solution.pivots);
  if (d[cols] != 0) {
    solution.status = LPSolution::Status::Infeasible;
    return solution;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!artificial[tab.basis()[i]]) continue;
    for (std::size_t j = 0; j < cols; ++j)
      if (!artificial[j] && tab.rows()[i][j] != 0) {
        tab.pivot(i, j);
        break;
      }
  }

  // Phase 2.
  std::vector<Rational> cost(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (auto p : parts[j]) cost[p.column] += direction * lp.objective[j] * p.coef;
  for (std::size_t j = 0; j < cols; ++j) {
    d[j] = cost[j];
    for (std::size_t i = 0; i < m; ++i) d[j] -= cost[tab.basis()[i]] * tab.rows()[i][j];
  }
  d[cols] = 0;
  for (std::size_t i = 0; i < m; ++i) d[cols] -= cost[tab.basis()[i]] * tab.rhs(i);
  if (tab.optimise(artificial, solution.pivots) == detail::Tableau::Outcome::Unbounded) {
    solution.status = LPSolution::Status::Unbounded;
    return solution;
  }

  std::vector<Rational> xs(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) xs[tab.basis()[i]] = tab.rhs(i);
  solution.status = LPSolution::Status::Optimal;
  solution.primal.assign(n, Rational(0));
  Rational value(0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = offset[j];
    for (auto p : parts[j]) x += xs[p.column] * p.coef;
    solution.primal[j] = x;
    value += lp.objective[j] * x;
  }
  solution.value = value;
  solution.dual.resize(lp.rows.size());
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    solution.dual[i] = direction * rows[i].sign * (cost[identity[i]] - d[identity[i]]);
  return solution;
}

}  // namespace flexlist
