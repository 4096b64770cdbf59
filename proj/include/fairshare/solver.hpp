#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fairshare/enumerate.hpp"
#include "fairshare/fairness.hpp"
#include "fairshare/graph.hpp"
#include "fairshare/lp.hpp"
#include "fairshare/model.hpp"

namespace fairshare {

class NoFairAllocationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SolveResult {
  Allocation allocation;
  SharingStats stats;  // recomputed from `allocation`
  WeightCertificate certificate;
  std::size_t graphs_examined = 0;
  Rational objective_value;
};

/// Objective value of a graph: what any allocation with exactly this support scores.
Rational graph_objective(const Instance& inst, const ConsumptionGraph& g, Objective objective);
Rational allocation_objective(const Instance& inst, const Allocation& alloc, Objective objective);

/// Fairness LP restricted to support g. Variables are the shares z(i, o) of objects with two or
/// more consumers, listed object-major; objects with one consumer are fixed at share 1.
struct GraphLp {
  lp::LinearProgram program{0};
  std::vector<std::pair<AgentIndex, ObjectIndex>> variables;
};

GraphLp fairness_lp(const Instance& inst, const ConsumptionGraph& g, const FairnessSpec& spec);

/// Assembles the allocation from an LP point of fairness_lp(inst, g, spec).
Allocation allocation_from_lp(const Instance& inst, const ConsumptionGraph& g, const GraphLp& lp,
                              std::span<const Rational> point);

/// A fair allocation with support inside g, if one exists.
std::optional<Allocation> fair_allocation_on(const Instance& inst, const ConsumptionGraph& g,
                                             const FairnessSpec& spec);

struct SolveOptions {
  EnumerationOptions enumeration;
};

/// Fair fPO allocation minimizing `objective` over all fPO graphs. For Objective::Sharings,
/// graphs with more than n-1 sharings are not examined.
/// Throws NoFairAllocationError when no examined graph admits a fair allocation.
SolveResult solve_min_sharing(const Instance& inst, const FairnessSpec& spec, Objective objective,
                              const SolveOptions& options = {});

/// Same, reusing an already enumerated graph set for this instance.
SolveResult solve_min_sharing(const Instance& inst, const FairnessSpec& spec, Objective objective,
                              const FpoGraphSet& graphs);

/// Two agents, pure goods, non-degenerate: prefix/suffix splits along the value-ratio order,
/// then single split goods. Throws PreconditionError otherwise.
SolveResult solve_two_agents_fast(const Instance& inst, const FairnessSpec& spec);

/// Vertex of { z : allocation, u_i(z_j) = V_i / n for all i and all j < n }.
/// At most n(n-1) sharings.
Allocation solve_consensus(const Instance& inst);

struct CheckReport {
  bool fair = false;
  bool nonmalicious = false;
  bool fpo = false;
  SharingStats stats;
  std::vector<Rational> utilities;
  std::optional<WeightCertificate> certificate;  // when fPO
  std::optional<Cycle> violating_cycle;           // when not fPO and a cycle exists
};

CheckReport check_allocation(const Instance& inst, const Allocation& alloc, const FairnessSpec& spec);

}  // namespace fairshare
