#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairshare/model.hpp"

namespace fairshare {

using AgentMask = std::uint32_t;
inline constexpr std::size_t kMaxAgents = 32;

/// Support of an allocation: for each object, the bitmask of agents consuming it.
/// The mask vector is the canonical encoding used for ordering and deduplication.
class ConsumptionGraph {
 public:
  /// Throws std::invalid_argument on an empty consumer set or a bit beyond `agents`.
  ConsumptionGraph(std::size_t agents, std::vector<AgentMask> consumers);

  std::size_t agents() const { return agents_; }
  std::size_t objects() const { return consumers_.size(); }

  AgentMask consumers(ObjectIndex o) const { return consumers_[o]; }
  bool consumes(AgentIndex i, ObjectIndex o) const { return (consumers_[o] >> i) & 1U; }
  std::size_t consumer_count(ObjectIndex o) const;

  std::size_t edge_count() const;
  std::size_t num_sharings() const { return edge_count() - objects(); }
  std::size_t num_shared_objects() const;

  const std::vector<AgentMask>& encoding() const { return consumers_; }

  auto operator<=>(const ConsumptionGraph&) const = default;

 private:
  std::size_t agents_;
  std::vector<AgentMask> consumers_;
};

/// Undirected consumption graph: edge (i, o) iff z(i, o) > 0.
ConsumptionGraph ucg_of(const Allocation& alloc);

/// An allocation with exactly the given support: each object split evenly among its consumers.
Allocation uniform_allocation(const ConsumptionGraph& g);

struct DirectedEdge {
  std::size_t from;
  std::size_t to;
  Rational weight;
  int sign = 0;  // sign of the agent's valuation that produced the edge
};

/// Weighted directed consumption graph over agent nodes [0, n) and object nodes [n, n + m).
class DirectedConsumptionGraph {
 public:
  DirectedConsumptionGraph(std::size_t agents, std::size_t objects);

  std::size_t agents() const { return agents_; }
  std::size_t objects() const { return objects_; }
  std::size_t node_count() const { return agents_ + objects_; }

  std::size_t agent_node(AgentIndex i) const { return i; }
  std::size_t object_node(ObjectIndex o) const { return agents_ + o; }
  bool is_agent_node(std::size_t node) const { return node < agents_; }

  void add_edge(std::size_t from, std::size_t to, Rational weight, int sign = 0);

  /// Edges in insertion order; dcg_of inserts agent out-edges first, then object out-edges.
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }

  /// Weight of the edge from -> to, if present.
  std::optional<Rational> weight(std::size_t from, std::size_t to) const;

 private:
  std::size_t agents_;
  std::size_t objects_;
  std::vector<DirectedEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

DirectedConsumptionGraph dcg_of(const Instance& inst, const ConsumptionGraph& g);

/// A directed cycle given by its node sequence (the closing edge back to nodes.front() is implied)
/// together with the exact product of its edge weights.
struct Cycle {
  std::vector<std::size_t> nodes;
  Rational product;
};

/// Exact product of the weights along the closed walk `nodes`. Throws if an edge is missing.
Rational cycle_product(const DirectedConsumptionGraph& d, std::span<const std::size_t> nodes);

/// Some cycle whose weight product is < 1, or nullopt. Only trade cycles are considered: a
/// cycle may pass through an object from one agent to the next only when both agents value it
/// with the same nonzero sign (a good handed over, or a bad taken on), since only those steps
/// are realisable exchanges. Multiplicative Bellman-Ford from a virtual source.
/// Returned cycles are rotated to start at their lowest agent node.
std::optional<Cycle> find_violating_cycle(const DirectedConsumptionGraph& d);

/// Goods are consumed only by agents valuing them positively; neutral objects only by
/// agents valuing them at zero. Bads are unconstrained.
bool is_nonmalicious(const Instance& inst, const ConsumptionGraph& g);

/// Whether some (equivalently: every) allocation with support g is fractionally Pareto-optimal.
bool is_fpo_graph(const Instance& inst, const ConsumptionGraph& g);

/// Repeated fPO-graph tests against one instance. Every trade step i -> o -> j is collapsed
/// into an agent edge of weight |v_io| / |v_jo| (precomputed), so each test is a Bellman-Ford
/// over the agents only. Agrees with is_fpo_graph.
class FpoGraphTester {
 public:
  explicit FpoGraphTester(const Instance& inst);
  bool operator()(const ConsumptionGraph& g) const;

 private:
  struct Step {
    AgentIndex from;
    AgentIndex to;
    AgentIndex holder;  // the agent whose consumption makes the step available
    Rational ratio;
  };
  const Instance& inst_;
  std::vector<std::vector<Step>> steps_;  // per object
  std::vector<AgentMask> allowed_;        // per object: agents who may consume it non-maliciously
};

bool is_fpo(const Instance& inst, const Allocation& alloc);

/// Positive agent weights such that every consumed (i, o) maximizes lambda_i v(i, o).
struct WeightCertificate {
  std::vector<Rational> lambda;
};

class NotFpoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lambda_j = minimal path product from agent 1 to agent j in the dcg augmented with
/// agent-to-agent edges of a large uniform weight. lambda_1 = 1.
/// Throws NotFpoError when g is malicious or contains a violating cycle.
WeightCertificate po_weights(const Instance& inst, const ConsumptionGraph& g);
WeightCertificate po_weights(const Instance& inst, const Allocation& alloc);

/// Independent check of the certificate inequalities on the support g.
bool certifies(const Instance& inst, const ConsumptionGraph& g, const WeightCertificate& cert);

}  // namespace fairshare
