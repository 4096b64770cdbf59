#include "fairshare/oracle.hpp"

#include <algorithm>
#include <string>

#include "fairshare/lp.hpp"
#include "fairshare/solver.hpp"

namespace fairshare::oracle {
namespace {

void check_budget(const Instance& inst, std::uint64_t budget) {
  mpz_class supports;
  mpz_ui_pow_ui(supports.get_mpz_t(), (1UL << inst.agents()) - 1, inst.objects());
  if (supports > mpz_class(std::to_string(budget))) {
    throw BudgetExceededError("oracle budget exceeded: " + supports.get_str() + " supports > " +
                              std::to_string(budget));
  }
}

}  // namespace

FpoGraphSet brute_fpo_graphs(const Instance& inst, std::uint64_t budget) {
  if (inst.agents() > 16) throw BudgetExceededError("oracle budget exceeded: too many agents");
  check_budget(inst, budget);
  const AgentMask full = (AgentMask{1} << inst.agents()) - 1;
  std::vector<AgentMask> masks(inst.objects(), 1);
  FpoGraphSet result;
  while (true) {
    ConsumptionGraph g(inst.agents(), masks);
    if (is_fpo_graph(inst, g)) result.insert(std::move(g));
    std::size_t o = 0;
    while (o < masks.size() && masks[o] == full) masks[o++] = 1;
    if (o == masks.size()) return result;
    ++masks[o];
  }
}

MinObjective brute_min_objective(const Instance& inst, const FairnessSpec& spec, Objective objective,
                                 std::uint64_t budget) {
  const FpoGraphSet graphs = brute_fpo_graphs(inst, budget);
  std::vector<std::pair<Rational, const ConsumptionGraph*>> ranked;
  for (const auto& g : graphs) ranked.emplace_back(graph_objective(inst, g, objective), &g);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [value, g] : ranked) {
    auto alloc = fair_allocation_on(inst, *g, spec);
    if (!alloc) continue;
    // Re-verify from the definitions rather than trusting the LP.
    const std::size_t n = inst.agents();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational own = utility(inst, *alloc, i);
      if (spec.kind == FairnessKind::Proportional) {
        if (own < spec.weight(i, n) * inst.total_value(i)) throw std::logic_error("oracle point is not proportional");
      } else {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && own / spec.weight(i, n) < utility_of_bundle(inst, *alloc, i, j) / spec.weight(j, n)) {
            throw std::logic_error("oracle point is not envy-free");
          }
        }
      }
    }
    for (std::size_t o = 0; o < inst.objects(); ++o) {
      for (std::size_t i = 0; i < n; ++i) {
        if (alloc->share(i, o) > 0 && !g->consumes(i, o)) throw std::logic_error("oracle point leaves its graph");
      }
    }
    // A proper subgraph would have been ranked no later, so the value is exact.
    if (allocation_objective(inst, *alloc, objective) != value) {
      throw std::logic_error("oracle point does not realize its graph objective");
    }
    return {value, graphs.size()};
  }
  throw NoFairAllocationError("no fair fPO allocation");
}

bool domination_check(const Instance& inst, const Allocation& alloc) {
  require_same_shape(inst, alloc);
  const std::size_t n = inst.agents();
  const std::size_t m = inst.objects();
  auto var = [&](std::size_t i, std::size_t o) { return i * m + o; };
  lp::LinearProgram program(n * m);
  for (std::size_t o = 0; o < m; ++o) {
    std::vector<Rational> row(n * m, Rational(0));
    for (std::size_t i = 0; i < n; ++i) row[var(i, o)] = 1;
    program.add_constraint(std::move(row), lp::Relation::Equal, 1);
  }
  Rational current_total = 0;
  std::vector<Rational> welfare(n * m, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n * m, Rational(0));
    Rational current = 0;
    for (std::size_t o = 0; o < m; ++o) {
      row[var(i, o)] = inst.value(i, o);
      welfare[var(i, o)] = inst.value(i, o);
      current += inst.value(i, o) * alloc.share(i, o);
    }
    current_total += current;
    program.add_constraint(std::move(row), lp::Relation::GreaterEqual, current);
  }
  const auto result = lp::maximize(program, welfare);
  if (result.status != lp::Status::Optimal) throw std::logic_error("domination LP must be feasible and bounded");
  return result.value == current_total;
}

}  // namespace fairshare::oracle
