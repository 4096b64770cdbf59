#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fairshare/rational.hpp"

namespace fairshare::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation;
  Rational rhs;
};

/// Feasibility system over exact rationals. Variables are nonnegative unless marked free.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables);

  std::size_t variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool nonnegative(std::size_t var) const { return nonneg_[var]; }

  /// Throws std::invalid_argument if the coefficient count differs from the variable count.
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  void set_free(std::size_t var);

 private:
  std::size_t variables_;
  std::vector<Constraint> constraints_;
  std::vector<bool> nonneg_;
};

/// Whether `point` satisfies every constraint and sign restriction exactly.
bool satisfies(const LinearProgram& lp, std::span<const Rational> point);

/// A feasible point, or nullopt when the system is infeasible. Phase-1 simplex, Bland's rule.
std::optional<std::vector<Rational>> feasible_point(const LinearProgram& lp);

/// A vertex of the feasible region: at most as many nonzero variables as there are rows in
/// the standard-form equality system. All variables must be nonnegative
/// (std::invalid_argument otherwise).
std::optional<std::vector<Rational>> basic_feasible_point(const LinearProgram& lp);

enum class Status { Optimal, Infeasible, Unbounded };

struct OptimizeResult {
  Status status = Status::Infeasible;
  std::vector<Rational> point;
  Rational value;
};

/// Maximizes objective . x over the feasible region (two-phase simplex, Bland's rule).
OptimizeResult maximize(const LinearProgram& lp, std::span<const Rational> objective);

}  // namespace fairshare::lp
