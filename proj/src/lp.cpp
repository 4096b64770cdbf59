#include "fairshare/lp.hpp"

#include <stdexcept>
#include <string>

namespace fairshare::lp {

LinearProgram::LinearProgram(std::size_t variables) : variables_(variables), nonneg_(variables, true) {}

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != variables_) {
    throw std::invalid_argument("constraint has " + std::to_string(coefficients.size()) +
                                " coefficients for " + std::to_string(variables_) + " variables");
  }
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_free(std::size_t var) { nonneg_.at(var) = false; }

bool satisfies(const LinearProgram& lp, std::span<const Rational> point) {
  if (point.size() != lp.variables()) return false;
  for (std::size_t j = 0; j < lp.variables(); ++j) {
    if (lp.nonnegative(j) && point[j] < 0) return false;
  }
  for (const auto& c : lp.constraints()) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.variables(); ++j) {
      if (c.coefficients[j] != 0) lhs += c.coefficients[j] * point[j];
    }
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Dense simplex tableau for: minimize c.x subject to A x = b, x >= 0, b >= 0.
// One artificial column per row provides the starting basis.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) {
    // Column layout: structural (free variables split in two), slacks, artificials.
    for (std::size_t j = 0; j < lp.variables(); ++j) {
      plus_column_.push_back(structural_++);
      minus_column_.push_back(lp.nonnegative(j) ? SIZE_MAX : structural_++);
    }
    std::size_t slacks = 0;
    for (const auto& c : lp.constraints()) {
      if (c.relation != Relation::Equal) ++slacks;
    }
    rows_ = lp.constraints().size();
    artificial_begin_ = structural_ + slacks;
    columns_ = artificial_begin_ + rows_;
    table_.assign(rows_, std::vector<Rational>(columns_ + 1, Rational(0)));
    basis_.resize(rows_);

    std::size_t slack = structural_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& c = lp.constraints()[r];
      auto& row = table_[r];
      for (std::size_t j = 0; j < lp.variables(); ++j) {
        row[plus_column_[j]] = c.coefficients[j];
        if (minus_column_[j] != SIZE_MAX) row[minus_column_[j]] = -c.coefficients[j];
      }
      if (c.relation == Relation::LessEqual) row[slack++] = 1;
      if (c.relation == Relation::GreaterEqual) row[slack++] = -1;
      row[columns_] = c.rhs;
      if (c.rhs < 0) {
        for (auto& x : row) x = -x;
      }
      row[artificial_begin_ + r] = 1;
      basis_[r] = artificial_begin_ + r;
    }
  }

  // Phase 1. Returns false when the system is infeasible; on success all artificial
  // variables are zero and, where possible, pivoted out of the basis.
  bool find_feasible_basis() {
    std::vector<Rational> cost(columns_, Rational(0));
    for (std::size_t j = artificial_begin_; j < columns_; ++j) cost[j] = 1;
    set_cost(cost);
    if (run(columns_) != Status::Optimal) throw std::logic_error("phase 1 cannot be unbounded");
    if (objective_[columns_] != 0) return false;

    for (std::size_t r = 0; r < table_.size();) {
      if (basis_[r] < artificial_begin_) {
        ++r;
        continue;
      }
      std::size_t entering = SIZE_MAX;
      for (std::size_t j = 0; j < artificial_begin_; ++j) {
        if (sgn(table_[r][j]) != 0) {
          entering = j;
          break;
        }
      }
      if (entering == SIZE_MAX) {
        // Redundant row: every non-artificial coefficient is zero.
        table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, entering);
      ++r;
    }
    return true;
  }

  // Phase 2 over non-artificial columns; `cost` indexed by original variables (minimized).
  Status minimize(std::span<const Rational> cost) {
    std::vector<Rational> column_cost(columns_, Rational(0));
    for (std::size_t j = 0; j < cost.size(); ++j) {
      column_cost[plus_column_[j]] = cost[j];
      if (minus_column_[j] != SIZE_MAX) column_cost[minus_column_[j]] = -cost[j];
    }
    set_cost(column_cost);
    return run(artificial_begin_);
  }

  std::vector<Rational> point() const {
    std::vector<Rational> column_value(columns_, Rational(0));
    for (std::size_t r = 0; r < table_.size(); ++r) column_value[basis_[r]] = table_[r][columns_];
    std::vector<Rational> x(plus_column_.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = column_value[plus_column_[j]];
      if (minus_column_[j] != SIZE_MAX) x[j] -= column_value[minus_column_[j]];
    }
    return x;
  }

  // Current objective value of the minimization.
  Rational value() const { return -objective_[columns_]; }

 private:
  void set_cost(const std::vector<Rational>& cost) {
    objective_.assign(columns_ + 1, Rational(0));
    for (std::size_t j = 0; j < columns_; ++j) objective_[j] = cost[j];
    for (std::size_t r = 0; r < table_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= columns_; ++j) objective_[j] -= cb * table_[r][j];
    }
  }

  // Bland's rule: lowest-index improving column, lowest-index basic variable among ratio ties.
  Status run(std::size_t allowed_columns) {
    Rational best_ratio, ratio;
    while (true) {
      std::size_t entering = SIZE_MAX;
      for (std::size_t j = 0; j < allowed_columns; ++j) {
        if (sgn(objective_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == SIZE_MAX) return Status::Optimal;

      std::size_t leaving = SIZE_MAX;
      for (std::size_t r = 0; r < table_.size(); ++r) {
        if (sgn(table_[r][entering]) <= 0) continue;
        ratio = table_[r][columns_] / table_[r][entering];
        if (leaving == SIZE_MAX || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == SIZE_MAX) return Status::Unbounded;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = table_[r];
    const Rational p = prow[c];
    for (auto& x : prow) {
      if (sgn(x) != 0) x /= p;
    }
    Rational factor;
    for (std::size_t k = 0; k < table_.size(); ++k) {
      if (k == r || sgn(table_[k][c]) == 0) continue;
      factor = table_[k][c];
      auto& row = table_[k];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (sgn(prow[j]) != 0) row[j] -= factor * prow[j];
      }
    }
    if (sgn(objective_[c]) != 0) {
      factor = objective_[c];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (sgn(prow[j]) != 0) objective_[j] -= factor * prow[j];
      }
    }
    basis_[r] = c;
  }

  std::vector<std::size_t> plus_column_;
  std::vector<std::size_t> minus_column_;
  std::size_t structural_ = 0;
  std::size_t rows_ = 0;
  std::size_t artificial_begin_ = 0;
  std::size_t columns_ = 0;
  std::vector<std::vector<Rational>> table_;
  std::vector<Rational> objective_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> basic_feasible_point(const LinearProgram& lp) {
  for (std::size_t j = 0; j < lp.variables(); ++j) {
    if (!lp.nonnegative(j)) throw std::invalid_argument("basic_feasible_point requires nonnegative variables");
  }
  Tableau tableau(lp);
  if (!tableau.find_feasible_basis()) return std::nullopt;
  return tableau.point();
}

std::optional<std::vector<Rational>> feasible_point(const LinearProgram& lp) {
  Tableau tableau(lp);
  if (!tableau.find_feasible_basis()) return std::nullopt;
  return tableau.point();
}

OptimizeResult maximize(const LinearProgram& lp, std::span<const Rational> objective) {
  if (objective.size() != lp.variables()) throw std::invalid_argument("objective length mismatch");
  Tableau tableau(lp);
  OptimizeResult result;
  if (!tableau.find_feasible_basis()) return result;
  std::vector<Rational> negated(objective.begin(), objective.end());
  for (auto& c : negated) c = -c;
  if (tableau.minimize(negated) == Status::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = Status::Optimal;
  result.point = tableau.point();
  result.value = -tableau.value();
  return result;
}

}  // namespace fairshare::lp
