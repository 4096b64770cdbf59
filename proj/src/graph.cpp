#include "fairshare/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fairshare {

ConsumptionGraph::ConsumptionGraph(std::size_t agents, std::vector<AgentMask> consumers)
    : agents_(agents), consumers_(std::move(consumers)) {
  if (agents_ == 0 || agents_ > kMaxAgents) {
    throw std::invalid_argument("consumption graphs support 1.." + std::to_string(kMaxAgents) + " agents");
  }
  const AgentMask allowed = agents_ == kMaxAgents ? ~AgentMask{0} : ((AgentMask{1} << agents_) - 1);
  for (std::size_t o = 0; o < consumers_.size(); ++o) {
    if (consumers_[o] == 0) throw std::invalid_argument("object " + std::to_string(o + 1) + " has no consumer");
    if ((consumers_[o] & ~allowed) != 0) throw std::invalid_argument("consumer mask exceeds agent count");
  }
}

std::size_t ConsumptionGraph::consumer_count(ObjectIndex o) const {
  return static_cast<std::size_t>(std::popcount(consumers_[o]));
}

std::size_t ConsumptionGraph::edge_count() const {
  std::size_t edges = 0;
  for (auto mask : consumers_) edges += static_cast<std::size_t>(std::popcount(mask));
  return edges;
}

std::size_t ConsumptionGraph::num_shared_objects() const {
  return static_cast<std::size_t>(
      std::count_if(consumers_.begin(), consumers_.end(), [](AgentMask m) { return std::popcount(m) > 1; }));
}

ConsumptionGraph ucg_of(const Allocation& alloc) {
  std::vector<AgentMask> masks(alloc.objects(), 0);
  for (std::size_t o = 0; o < alloc.objects(); ++o) {
    for (std::size_t i = 0; i < alloc.agents(); ++i) {
      if (alloc.share(i, o) > 0) masks[o] |= AgentMask{1} << i;
    }
  }
  return ConsumptionGraph(alloc.agents(), std::move(masks));
}

Allocation uniform_allocation(const ConsumptionGraph& g) {
  RationalMatrix z(g.agents(), g.objects(), Rational(0));
  for (std::size_t o = 0; o < g.objects(); ++o) {
    const Rational part(1, static_cast<unsigned long>(g.consumer_count(o)));
    for (std::size_t i = 0; i < g.agents(); ++i) {
      if (g.consumes(i, o)) z(i, o) = part;
    }
  }
  return Allocation(std::move(z));
}

DirectedConsumptionGraph::DirectedConsumptionGraph(std::size_t agents, std::size_t objects)
    : agents_(agents), objects_(objects), out_(agents + objects) {}

void DirectedConsumptionGraph::add_edge(std::size_t from, std::size_t to, Rational weight, int sign) {
  out_[from].push_back(edges_.size());
  edges_.push_back({from, to, std::move(weight), sign});
}

std::optional<Rational> DirectedConsumptionGraph::weight(std::size_t from, std::size_t to) const {
  for (std::size_t e : out_[from]) {
    if (edges_[e].to == to) return edges_[e].weight;
  }
  return std::nullopt;
}

DirectedConsumptionGraph dcg_of(const Instance& inst, const ConsumptionGraph& g) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.objects();
  if (g.agents() != n || g.objects() != m) throw std::invalid_argument("graph does not match instance");
  DirectedConsumptionGraph d(n, m);
  // z(i, o) < 1 exactly when some other agent also consumes o.
  auto not_full = [&](AgentIndex i, ObjectIndex o) { return !g.consumes(i, o) || g.consumer_count(o) >= 2; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < m; ++o) {
      const Rational& v = inst.value(i, o);
      if (g.consumes(i, o) && v >= 0) {
        d.add_edge(d.agent_node(i), d.object_node(o), v, sgn(v));
      } else if (v < 0 && not_full(i, o)) {
        d.add_edge(d.agent_node(i), d.object_node(o), -v, -1);
      }
    }
  }
  for (std::size_t o = 0; o < m; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& v = inst.value(i, o);
      if (g.consumes(i, o) && v < 0) {
        d.add_edge(d.object_node(o), d.agent_node(i), Rational(-1) / v, -1);
      } else if (v > 0 && not_full(i, o)) {
        d.add_edge(d.object_node(o), d.agent_node(i), Rational(1) / v, 1);
      }
    }
  }
  return d;
}

Rational cycle_product(const DirectedConsumptionGraph& d, std::span<const std::size_t> nodes) {
  Rational product = 1;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto w = d.weight(nodes[k], nodes[(k + 1) % nodes.size()]);
    if (!w) throw std::invalid_argument("cycle uses a missing edge");
    product *= *w;
  }
  return product;
}

namespace {

void rotate_to_lowest_agent(const DirectedConsumptionGraph& d, std::vector<std::size_t>& nodes) {
  auto best = nodes.end();
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    if (d.is_agent_node(*it) && (best == nodes.end() || *it < *best)) best = it;
  }
  if (best != nodes.end()) std::rotate(nodes.begin(), best, nodes.end());
}

// Trade graph: each object node is split into a good copy (entered and left along edges of
// positive valuations) and a bad copy (negative valuations). Zero-valuation edges are dropped:
// a consumer valuing an object at zero has nothing to give with it.
struct TradeEdge {
  std::size_t from;
  std::size_t to;
  const Rational* weight;
};

struct TradeGraph {
  std::size_t nodes = 0;
  std::vector<TradeEdge> edges;
};

TradeGraph trade_graph(const DirectedConsumptionGraph& d) {
  const std::size_t n = d.agents(), m = d.objects();
  auto split = [&](std::size_t node, int sign) { return sign > 0 ? node : node + m; };
  TradeGraph t{n + 2 * m, {}};
  for (const auto& e : d.edges()) {
    if (e.sign == 0) continue;
    const std::size_t from = d.is_agent_node(e.from) ? e.from : split(e.from, e.sign);
    const std::size_t to = d.is_agent_node(e.to) ? e.to : split(e.to, e.sign);
    t.edges.push_back({from, to, &e.weight});
  }
  return t;
}

std::size_t merge_split_node(const DirectedConsumptionGraph& d, std::size_t node) {
  return node >= d.node_count() ? node - d.objects() : node;
}

}  // namespace

std::optional<Cycle> find_violating_cycle(const DirectedConsumptionGraph& d) {
  const TradeGraph t = trade_graph(d);
  std::vector<Rational> dist(t.nodes, Rational(1));
  std::vector<std::size_t> pred(t.nodes, SIZE_MAX);
  std::size_t last_updated = SIZE_MAX;
  Rational candidate;
  for (std::size_t round = 0; round < t.nodes; ++round) {
    last_updated = SIZE_MAX;
    for (const auto& edge : t.edges) {
      candidate = dist[edge.from] * *edge.weight;
      if (candidate < dist[edge.to]) {
        dist[edge.to] = candidate;
        pred[edge.to] = edge.from;
        last_updated = edge.to;
      }
    }
    if (last_updated == SIZE_MAX) return std::nullopt;
  }

  std::size_t x = last_updated;
  for (std::size_t k = 0; k < t.nodes; ++k) {
    x = pred[x];
    if (x == SIZE_MAX) throw std::logic_error("predecessor walk left the graph");
  }
  std::vector<std::size_t> cycle{merge_split_node(d, x)};
  for (std::size_t y = pred[x]; y != x; y = pred[y]) cycle.push_back(merge_split_node(d, y));
  std::reverse(cycle.begin(), cycle.end());
  rotate_to_lowest_agent(d, cycle);
  Rational product = cycle_product(d, cycle);
  if (product >= 1) throw std::logic_error("predecessor cycle is not violating");
  return Cycle{std::move(cycle), std::move(product)};
}

bool is_nonmalicious(const Instance& inst, const ConsumptionGraph& g) {
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    const auto cls = classify_object(inst, o);
    if (cls == ObjectClass::Bad) continue;
    const bool good = cls != ObjectClass::Neutral;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (!g.consumes(i, o)) continue;
      const int s = sgn(inst.value(i, o));
      if (good ? s <= 0 : s != 0) return false;
    }
  }
  return true;
}

bool is_fpo_graph(const Instance& inst, const ConsumptionGraph& g) {
  return is_nonmalicious(inst, g) && !find_violating_cycle(dcg_of(inst, g));
}

FpoGraphTester::FpoGraphTester(const Instance& inst) : inst_(inst), steps_(inst.objects()), allowed_(inst.objects()) {
  const std::size_t n = inst.agents();
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    const auto cls = classify_object(inst, o);
    for (std::size_t i = 0; i < n; ++i) {
      const int s = sgn(inst.value(i, o));
      const bool ok = cls == ObjectClass::Bad || (cls == ObjectClass::Neutral ? s == 0 : s > 0);
      if (ok) allowed_[o] |= AgentMask{1} << i;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int s = sgn(inst.value(i, o));
        if (i == j || s == 0 || s != sgn(inst.value(j, o))) continue;
        // A good moves from its holder i to j; a bad moves from its holder j to i.
        steps_[o].push_back({i, j, s > 0 ? i : j, abs(inst.value(i, o)) / abs(inst.value(j, o))});
      }
    }
  }
}

bool FpoGraphTester::operator()(const ConsumptionGraph& g) const {
  const std::size_t n = inst_.agents();
  if (g.agents() != n || g.objects() != inst_.objects()) throw std::invalid_argument("graph does not match instance");
  for (std::size_t o = 0; o < g.objects(); ++o) {
    if (g.consumers(o) & ~allowed_[o]) return false;
  }
  std::vector<const Rational*> weight(n * n, nullptr);
  for (std::size_t o = 0; o < g.objects(); ++o) {
    for (const auto& step : steps_[o]) {
      if (!g.consumes(step.holder, o)) continue;
      const Rational*& w = weight[step.from * n + step.to];
      if (!w || step.ratio < *w) w = &step.ratio;
    }
  }
  std::vector<Rational> dist(n, Rational(1));
  Rational candidate;
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational* w = weight[i * n + j];
        if (!w) continue;
        candidate = dist[i] * *w;
        if (candidate < dist[j]) {
          dist[j] = candidate;
          changed = true;
        }
      }
    }
    if (!changed) return true;
  }
  return false;
}

bool is_fpo(const Instance& inst, const Allocation& alloc) {
  require_same_shape(inst, alloc);
  return is_fpo_graph(inst, ucg_of(alloc));
}

WeightCertificate po_weights(const Instance& inst, const ConsumptionGraph& g) {
  if (!is_nonmalicious(inst, g)) throw NotFpoError("not fPO: allocation is malicious");
  const std::size_t n = inst.agents();
  const DirectedConsumptionGraph d = dcg_of(inst, g);
  TradeGraph t = trade_graph(d);

  // Agent-to-agent edges heavy enough that no cycle through them has product < 1.
  Rational base = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < inst.objects(); ++o) {
      const Rational& v = inst.value(i, o);
      if (v == 0) continue;
      const Rational a = abs(v);
      base = std::max({base, a, Rational(1 / a)});
    }
  }
  Rational big = 1;
  for (std::size_t k = 0; k < 2 * (n - 1); ++k) big *= base;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) t.edges.push_back({i, j, &big});
    }
  }

  // Minimum-product paths from agent 0.
  std::vector<std::optional<Rational>> dist(t.nodes);
  dist[0] = Rational(1);
  for (std::size_t round = 0; round <= t.nodes; ++round) {
    bool changed = false;
    for (const auto& edge : t.edges) {
      if (!dist[edge.from]) continue;
      Rational candidate = *dist[edge.from] * *edge.weight;
      if (!dist[edge.to] || candidate < *dist[edge.to]) {
        dist[edge.to] = std::move(candidate);
        changed = true;
      }
    }
    if (!changed) break;
    if (round == t.nodes) throw NotFpoError("not fPO: consumption graph has a cycle with product < 1");
  }

  WeightCertificate cert;
  for (std::size_t i = 0; i < n; ++i) {
    if (!dist[i] || *dist[i] <= 0) throw NotFpoError("not fPO: no positive weight for agent " + std::to_string(i + 1));
    cert.lambda.push_back(*dist[i]);
  }
  return cert;
}

WeightCertificate po_weights(const Instance& inst, const Allocation& alloc) {
  require_same_shape(inst, alloc);
  return po_weights(inst, ucg_of(alloc));
}

bool certifies(const Instance& inst, const ConsumptionGraph& g, const WeightCertificate& cert) {
  if (cert.lambda.size() != inst.agents()) return false;
  for (const auto& l : cert.lambda) {
    if (l <= 0) return false;
  }
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    Rational best = cert.lambda[0] * inst.value(0, o);
    for (std::size_t j = 1; j < inst.agents(); ++j) best = std::max(best, Rational(cert.lambda[j] * inst.value(j, o)));
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (g.consumes(i, o) && cert.lambda[i] * inst.value(i, o) < best) return false;
    }
  }
  return true;
}

}  // namespace fairshare
