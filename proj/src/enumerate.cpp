#include "fairshare/enumerate.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <utility>
#include <vector>

namespace fairshare {
namespace {

constexpr AgentMask kFirst = 1;
constexpr AgentMask kSecond = 2;
constexpr AgentMask kBoth = 3;

// Emits every combination of {first, second, both} over the `free` positions of `base`.
void emit_free_choices(std::vector<AgentMask> base, const std::vector<std::size_t>& free, FpoGraphSet& out) {
  std::vector<int> digit(free.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < free.size(); ++k) base[free[k]] = static_cast<AgentMask>(digit[k] + 1);
    out.emplace(2, base);
    std::size_t k = 0;
    while (k < free.size() && ++digit[k] == 3) digit[k++] = 0;
    if (k == free.size()) return;
  }
}

using TwoAgentOptions = std::vector<std::vector<AgentMask>>;

// Per-thread state for extending one stage.
struct Extender {
  const Instance& inst;
  const Instance& stage;
  std::size_t newcomer;
  FpoGraphTester is_fpo;
  std::map<std::pair<std::size_t, std::vector<ObjectIndex>>, TwoAgentOptions> cache;
  FpoGraphSet accepted;
  FpoGraphSet rejected;

  const TwoAgentOptions& options_for(AgentIndex i, std::vector<ObjectIndex> owned) {
    auto key = std::make_pair(i, std::move(owned));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    TwoAgentOptions options;
    for (const auto& g : enumerate_two_agents(inst, i, newcomer, key.second)) options.push_back(g.encoding());
    return cache.emplace(std::move(key), std::move(options)).first->second;
  }

  void extend(const ConsumptionGraph& g) {
    const std::size_t k = g.agents();
    const std::size_t m = g.objects();
    std::vector<std::vector<ObjectIndex>> owned(k);
    std::vector<const TwoAgentOptions*> options(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t o = 0; o < m; ++o) {
        if (g.consumes(i, o)) owned[i].push_back(o);
      }
      options[i] = &options_for(i, owned[i]);
    }

    std::vector<std::size_t> choice(k, 0);
    std::vector<AgentMask> masks(m);
    const AgentMask newcomer_bit = AgentMask{1} << newcomer;
    while (true) {
      std::fill(masks.begin(), masks.end(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& pick = (*options[i])[choice[i]];
        for (std::size_t p = 0; p < owned[i].size(); ++p) {
          const ObjectIndex o = owned[i][p];
          if (pick[p] & kFirst) masks[o] |= AgentMask{1} << i;
          if (pick[p] & kSecond) masks[o] |= newcomer_bit;
        }
      }
      ConsumptionGraph candidate(k + 1, masks);
      if (!accepted.contains(candidate) && !rejected.contains(candidate)) {
        if (is_fpo(candidate)) {
          accepted.insert(std::move(candidate));
        } else {
          rejected.insert(std::move(candidate));
        }
      }
      std::size_t i = 0;
      while (i < k && ++choice[i] == options[i]->size()) choice[i++] = 0;
      if (i == k) return;
    }
  }
};

}  // namespace

FpoGraphSet enumerate_two_agents(const Instance& inst, AgentIndex first, AgentIndex second,
                                 std::span<const ObjectIndex> objects) {
  const std::size_t count = objects.size();
  std::vector<AgentMask> base(count, 0);
  std::vector<std::size_t> zero_objects;
  std::vector<std::pair<std::size_t, Rational>> ratio_objects;  // position, |v1|/|v2|
  for (std::size_t p = 0; p < count; ++p) {
    const Rational& a = inst.value(first, objects[p]);
    const Rational& b = inst.value(second, objects[p]);
    const int sa = sgn(a), sb = sgn(b);
    if (sa == 0 && sb == 0) {
      zero_objects.push_back(p);
    } else if (sa == sb) {
      ratio_objects.emplace_back(p, a / b);
    } else {
      // Disagreement: only the larger valuer may consume it non-maliciously.
      base[p] = a > b ? kFirst : kSecond;
    }
  }

  FpoGraphSet result;
  if (count == 0) {
    result.emplace(2, std::vector<AgentMask>{});
    return result;
  }
  std::vector<Rational> thresholds;
  for (const auto& [p, r] : ratio_objects) thresholds.push_back(r);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  if (thresholds.empty()) {
    emit_free_choices(base, zero_objects, result);
    return result;
  }
  for (const auto& t : thresholds) {
    std::vector<std::size_t> free = zero_objects;
    for (const auto& [p, r] : ratio_objects) {
      const bool is_bad = sgn(inst.value(first, objects[p])) < 0;
      if (r == t) {
        free.push_back(p);
      } else if ((r > t) != is_bad) {
        base[p] = kFirst;
      } else {
        base[p] = kSecond;
      }
    }
    emit_free_choices(base, free, result);
  }
  return result;
}

FpoGraphSet extend_with_agent(const Instance& inst, const FpoGraphSet& graphs, std::size_t threads) {
  if (graphs.empty()) return {};
  const std::size_t k = graphs.begin()->agents();
  if (k + 1 > inst.agents()) throw std::invalid_argument("no agent left to add");
  const Instance stage = k + 1 == inst.agents() ? inst : inst.leading_agents(k + 1);

  std::vector<const ConsumptionGraph*> work;
  for (const auto& g : graphs) work.push_back(&g);
  threads = std::max<std::size_t>(1, std::min(threads, work.size()));

  std::vector<Extender> extenders;
  for (std::size_t t = 0; t < threads; ++t) extenders.push_back(Extender{inst, stage, k, FpoGraphTester(stage), {}, {}, {}});
  auto run = [&](std::size_t t) {
    for (std::size_t w = t; w < work.size(); w += threads) extenders[t].extend(*work[w]);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
  }

  FpoGraphSet result = std::move(extenders[0].accepted);
  for (std::size_t t = 1; t < threads; ++t) result.merge(extenders[t].accepted);
  return result;
}

FpoGraphSet enumerate_fpo_graphs(const Instance& inst, const EnumerationOptions& options) {
  const std::size_t n = inst.agents();
  if (n > kMaxAgents) throw std::invalid_argument("too many agents");
  const std::size_t d = degeneracy(inst);
  if (d * n * (n - 1) / 2 > options.degeneracy_budget) {
    throw DegeneracyTooHighError("degeneracy too high: D(v) = " + std::to_string(d) + " with " + std::to_string(n) +
                                 " agents exceeds the enumeration budget " +
                                 std::to_string(options.degeneracy_budget));
  }

  std::vector<ObjectIndex> all(inst.objects());
  for (std::size_t o = 0; o < all.size(); ++o) all[o] = o;
  FpoGraphSet graphs = enumerate_two_agents(inst, 0, 1, all);
  if (n == 2) {
    for (const auto& g : graphs) {
      if (!is_fpo_graph(inst, g)) throw std::logic_error("two-agent enumeration emitted a non-fPO graph");
    }
  }
  for (std::size_t k = 2; k < n; ++k) graphs = extend_with_agent(inst, graphs, options.threads);

  if (options.max_sharings) {
    std::erase_if(graphs, [&](const ConsumptionGraph& g) { return g.num_sharings() > *options.max_sharings; });
  }
  return graphs;
}

mpz_class fpo_graph_count_bound(std::size_t n, std::size_t m, std::size_t degeneracy) {
  const unsigned long pairs = n * (n - 1) / 2;
  mpz_class three, mpow;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, (1 + degeneracy) * pairs);
  mpz_ui_pow_ui(mpow.get_mpz_t(), m, pairs);
  return three * mpow;
}

}  // namespace fairshare
