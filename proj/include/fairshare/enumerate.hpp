#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>

#include "fairshare/graph.hpp"
#include "fairshare/model.hpp"

namespace fairshare {

/// Deduplicated set of consumption graphs, ordered by canonical encoding.
using FpoGraphSet = std::set<ConsumptionGraph>;

class DegeneracyTooHighError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  /// Graphs with more sharings are dropped from the final result only.
  std::optional<std::size_t> max_sharings;
  /// Refuse when D(v) * n(n-1)/2 exceeds this.
  std::size_t degeneracy_budget = 24;
  std::size_t threads = 1;
};

/// All fPO graphs of the two-agent problem between agents `first` and `second` over the listed
/// objects. The result has two agents (bit 0 = first, bit 1 = second) and one column per
/// listed object, in the listed order.
FpoGraphSet enumerate_two_agents(const Instance& inst, AgentIndex first, AgentIndex second,
                                 std::span<const ObjectIndex> objects);

/// Given every fPO graph among agents [0, k), returns every fPO graph among agents [0, k]
/// (k = graphs' agent count).
FpoGraphSet extend_with_agent(const Instance& inst, const FpoGraphSet& graphs, std::size_t threads = 1);

/// Every consumption graph of an fPO allocation. Throws DegeneracyTooHighError past the budget.
FpoGraphSet enumerate_fpo_graphs(const Instance& inst, const EnumerationOptions& options = {});

/// Upper bound 3^{(1+D) n(n-1)/2} * m^{n(n-1)/2} on the number of fPO graphs.
mpz_class fpo_graph_count_bound(std::size_t n, std::size_t m, std::size_t degeneracy);

}  // namespace fairshare
