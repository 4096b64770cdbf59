#pragma once

#include <cstdint>
#include <stdexcept>

#include "fairshare/enumerate.hpp"
#include "fairshare/fairness.hpp"
#include "fairshare/model.hpp"

namespace fairshare::oracle {

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSupportBudget = 1'000'000;

/// Every fPO graph, found by testing all (2^n - 1)^m supports.
/// Throws BudgetExceededError when that count exceeds `budget`.
FpoGraphSet brute_fpo_graphs(const Instance& inst, std::uint64_t budget = kDefaultSupportBudget);

struct MinObjective {
  Rational value;
  std::size_t fpo_graphs = 0;
};

/// Minimum of `objective` over fair allocations supported on some fPO graph (no sharing cap).
/// Every fair point found is re-verified against the raw fairness definitions.
/// Throws BudgetExceededError as above, or std::runtime_error when nothing is fair.
MinObjective brute_min_objective(const Instance& inst, const FairnessSpec& spec, Objective objective,
                                 std::uint64_t budget = kDefaultSupportBudget);

/// fPO test by linear programming: maximize total utility over allocations that give every
/// agent at least her current utility; fPO iff the optimum equals the current total.
bool domination_check(const Instance& inst, const Allocation& alloc);

}  // namespace fairshare::oracle
