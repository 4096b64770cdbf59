#pragma once

#include <cstddef>

#include "fairshare/graph.hpp"
#include "fairshare/model.hpp"

namespace fairshare {

/// Moves every share a non-positive valuer holds in a good to the lowest-index positive
/// valuer, and every share a negative valuer holds in a neutral object to the lowest-index
/// zero valuer. The result is non-malicious and weakly dominates the input.
Allocation repair_malicious(const Instance& inst, const Allocation& alloc);

struct EliminationTrace {
  std::size_t violating_trades = 0;  // trades along cycles with product < 1
  std::size_t balanced_trades = 0;   // trades along undirected cycles (product exactly 1)
  /// Undirected edge count after repair and after each balanced trade (strictly decreasing).
  std::vector<std::size_t> balanced_edge_counts;
};

/// Pareto-improves `alloc` into an fPO allocation whose undirected consumption graph is
/// acyclic, hence with at most n-1 sharings. Every agent's utility weakly increases.
Allocation eliminate_cycles(const Instance& inst, const Allocation& alloc,
                            EliminationTrace* trace = nullptr);

/// Proportional, fPO, at most n-1 sharings: cycle elimination applied to the equal split.
Allocation prop_fpo_simple(const Instance& inst);

}  // namespace fairshare
