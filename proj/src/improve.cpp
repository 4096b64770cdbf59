#include "fairshare/improve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fairshare {
namespace {

ConsumptionGraph support(const RationalMatrix& z) {
  std::vector<AgentMask> masks(z.cols(), 0);
  for (std::size_t o = 0; o < z.cols(); ++o) {
    for (std::size_t i = 0; i < z.rows(); ++i) {
      if (sgn(z(i, o)) > 0) masks[o] |= AgentMask{1} << i;
    }
  }
  return ConsumptionGraph(z.rows(), std::move(masks));
}

// Executes the maximal weakly-improving trade around `cycle` = (i_1, o_1, i_2, o_2, ..., i_L, o_L),
// where i_k passes o_k to i_{k+1} (a good) or i_{k+1} passes o_k to i_k (a bad). Every agent
// but i_1 is left indifferent; i_1 gains iff the cycle product is below one.
void trade(const Instance& inst, RationalMatrix& z, const std::vector<std::size_t>& cycle) {
  const std::size_t n = inst.agents();
  const std::size_t length = cycle.size() / 2;
  auto agent = [&](std::size_t k) { return cycle[(2 * k) % cycle.size()]; };
  auto object = [&](std::size_t k) { return cycle[2 * k + 1] - n; };

  std::vector<Rational> epsilon(length);
  std::vector<bool> good(length);
  epsilon[0] = 1;
  for (std::size_t k = 0; k < length; ++k) {
    const Rational& giver_value = inst.value(agent(k), object(k));
    const Rational& taker_value = inst.value(agent(k + 1), object(k));
    if (sgn(giver_value) == 0 || sgn(giver_value) != sgn(taker_value)) {
      throw std::logic_error("trade cycle crosses an object the two agents disagree on");
    }
    good[k] = sgn(giver_value) > 0;
    if (k > 0) epsilon[k] = epsilon[k - 1] * abs(inst.value(agent(k), object(k - 1))) / abs(giver_value);
  }
  // Scale up until some donor runs out: that donor's edge disappears.
  Rational scale;
  for (std::size_t k = 0; k < length; ++k) {
    const Rational& held = good[k] ? z(agent(k), object(k)) : z(agent(k + 1), object(k));
    Rational limit = held / epsilon[k];
    if (k == 0 || limit < scale) scale = limit;
  }
  if (sgn(scale) <= 0) throw std::logic_error("trade cycle has an empty donor");
  for (std::size_t k = 0; k < length; ++k) {
    const Rational amount = epsilon[k] * scale;
    const std::size_t from = good[k] ? agent(k) : agent(k + 1);
    const std::size_t to = good[k] ? agent(k + 1) : agent(k);
    z(from, object(k)) -= amount;
    z(to, object(k)) += amount;
  }
}

Rational orientation_product(const Instance& inst, const std::vector<std::size_t>& cycle) {
  const std::size_t n = inst.agents();
  Rational product = 1;
  for (std::size_t k = 0; k < cycle.size(); k += 2) {
    const std::size_t o = cycle[k + 1] - n;
    product *= abs(inst.value(cycle[k], o));
    product /= abs(inst.value(cycle[(k + 2) % cycle.size()], o));
  }
  return product;
}

// First cycle of the undirected consumption graph, closed by the earliest edge (agent-major
// order) that joins two already-connected nodes. Returned as (i, o, i', o', ...).
std::optional<std::vector<std::size_t>> undirected_cycle(const ConsumptionGraph& g) {
  const std::size_t n = g.agents();
  const std::size_t nodes = n + g.objects();
  std::vector<std::vector<std::size_t>> forest(nodes);
  std::vector<std::size_t> component(nodes);
  std::iota(component.begin(), component.end(), 0);
  auto find = [&](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < g.objects(); ++o) {
      if (!g.consumes(i, o)) continue;
      const std::size_t a = i, b = n + o;
      if (find(a) != find(b)) {
        component[find(a)] = find(b);
        forest[a].push_back(b);
        forest[b].push_back(a);
        continue;
      }
      // Tree path b ~> a, then the closing edge a - b.
      std::vector<std::size_t> parent(nodes, SIZE_MAX);
      std::vector<std::size_t> stack{b};
      parent[b] = b;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (x == a) break;
        for (std::size_t y : forest[x]) {
          if (parent[y] == SIZE_MAX) {
            parent[y] = x;
            stack.push_back(y);
          }
        }
      }
      std::vector<std::size_t> path;  // a, ..., b (reversed tree path)
      for (std::size_t x = a; x != b; x = parent[x]) path.push_back(x);
      path.push_back(b);
      // Cycle a -> b -> ... -> (node before a): reverse the path after a.
      std::vector<std::size_t> cycle{a};
      cycle.insert(cycle.end(), path.rbegin(), path.rend() - 1);
      return cycle;
    }
  }
  return std::nullopt;
}

}  // namespace

Allocation repair_malicious(const Instance& inst, const Allocation& alloc) {
  require_same_shape(inst, alloc);
  RationalMatrix z = alloc.shares();
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    const auto cls = classify_object(inst, o);
    if (cls == ObjectClass::Bad) continue;
    const int wanted = cls == ObjectClass::Neutral ? 0 : 1;
    std::size_t target = 0;
    while (sgn(inst.value(target, o)) != wanted) ++target;
    for (std::size_t j = 0; j < inst.agents(); ++j) {
      const int s = sgn(inst.value(j, o));
      const bool offending = wanted == 1 ? s <= 0 : s < 0;
      if (offending && sgn(z(j, o)) > 0) {
        z(target, o) += z(j, o);
        z(j, o) = 0;
      }
    }
  }
  return Allocation(std::move(z));
}

Allocation eliminate_cycles(const Instance& inst, const Allocation& alloc, EliminationTrace* trace) {
  EliminationTrace local;
  EliminationTrace& t = trace ? *trace : local;
  t = {};
  RationalMatrix z = repair_malicious(inst, alloc).shares();

  // Zero-valued consumers of a neutral object are indifferent; one of them takes it all.
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    if (classify_object(inst, o) != ObjectClass::Neutral) continue;
    std::size_t keeper = SIZE_MAX;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (sgn(z(i, o)) == 0) continue;
      if (keeper == SIZE_MAX) {
        keeper = i;
      } else {
        z(keeper, o) += z(i, o);
        z(i, o) = 0;
      }
    }
  }

  const std::size_t limit = 64 * (inst.agents() * inst.objects() + 1) * (inst.agents() * inst.objects() + 1);
  while (auto cycle = find_violating_cycle(dcg_of(inst, support(z)))) {
    if (sgn(cycle->product) == 0) throw std::logic_error("zero-product cycle after repair");
    trade(inst, z, cycle->nodes);
    if (++t.violating_trades > limit) throw std::logic_error("cycle elimination did not terminate");
  }

  t.balanced_edge_counts.push_back(support(z).edge_count());
  while (auto cycle = undirected_cycle(support(z))) {
    if (orientation_product(inst, *cycle) > 1) std::reverse(cycle->begin() + 1, cycle->end());
    trade(inst, z, *cycle);
    ++t.balanced_trades;
    t.balanced_edge_counts.push_back(support(z).edge_count());
  }
  return Allocation(std::move(z));
}

Allocation prop_fpo_simple(const Instance& inst) {
  return eliminate_cycles(inst, Allocation::equal_split(inst.agents(), inst.objects()));
}

}  // namespace fairshare
