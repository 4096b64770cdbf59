#include "fairshare/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace fairshare {

Rational graph_objective(const Instance& inst, const ConsumptionGraph& g, Objective objective) {
  switch (objective) {
    case Objective::Sharings: return Rational(static_cast<unsigned long>(g.num_sharings()));
    case Objective::SharedObjects: return Rational(static_cast<unsigned long>(g.num_shared_objects()));
    case Objective::SharedValue: {
      Rational total = 0;
      for (std::size_t o = 0; o < g.objects(); ++o) {
        if (g.consumer_count(o) < 2) continue;
        for (std::size_t i = 0; i < g.agents(); ++i) {
          if (g.consumes(i, o)) total += abs(inst.value(i, o));
        }
      }
      return total;
    }
    case Objective::AnyFeasible: return 0;
  }
  return 0;
}

Rational allocation_objective(const Instance& inst, const Allocation& alloc, Objective objective) {
  return graph_objective(inst, ucg_of(alloc), objective);
}

GraphLp fairness_lp(const Instance& inst, const ConsumptionGraph& g, const FairnessSpec& spec) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.objects();
  spec.validate(n);
  GraphLp result;
  for (std::size_t o = 0; o < m; ++o) {
    if (g.consumer_count(o) < 2) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (g.consumes(i, o)) result.variables.emplace_back(i, o);
    }
  }
  const std::size_t vars = result.variables.size();
  result.program = lp::LinearProgram(vars);

  for (std::size_t k = 0; k < vars;) {
    const ObjectIndex o = result.variables[k].second;
    std::vector<Rational> row(vars, Rational(0));
    for (; k < vars && result.variables[k].second == o; ++k) row[k] = 1;
    result.program.add_constraint(std::move(row), lp::Relation::Equal, 1);
  }

  // fixed(i, j) = agent i's value for the unshared objects held by j.
  RationalMatrix fixed(n, n, Rational(0));
  for (std::size_t o = 0; o < m; ++o) {
    if (g.consumer_count(o) != 1) continue;
    const auto owner = static_cast<std::size_t>(std::countr_zero(g.consumers(o)));
    for (std::size_t i = 0; i < n; ++i) fixed(i, owner) += inst.value(i, o);
  }

  if (spec.kind == FairnessKind::Proportional) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(vars, Rational(0));
      for (std::size_t k = 0; k < vars; ++k) {
        const auto [holder, o] = result.variables[k];
        if (holder == i) row[k] = inst.value(i, o);
      }
      result.program.add_constraint(std::move(row), lp::Relation::GreaterEqual,
                                    spec.weight(i, n) * inst.total_value(i) - fixed(i, i));
    }
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational wi = spec.weight(i, n), wj = spec.weight(j, n);
      std::vector<Rational> row(vars, Rational(0));
      for (std::size_t k = 0; k < vars; ++k) {
        const auto [holder, o] = result.variables[k];
        if (holder == i) row[k] = wj * inst.value(i, o);
        if (holder == j) row[k] = -wi * inst.value(i, o);
      }
      result.program.add_constraint(std::move(row), lp::Relation::GreaterEqual,
                                    wi * fixed(i, j) - wj * fixed(i, i));
    }
  }
  return result;
}

Allocation allocation_from_lp(const Instance& inst, const ConsumptionGraph& g, const GraphLp& lp,
                              std::span<const Rational> point) {
  RationalMatrix z(inst.agents(), inst.objects(), Rational(0));
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    if (g.consumer_count(o) == 1) z(static_cast<std::size_t>(std::countr_zero(g.consumers(o))), o) = 1;
  }
  for (std::size_t k = 0; k < lp.variables.size(); ++k) z(lp.variables[k].first, lp.variables[k].second) = point[k];
  return Allocation(std::move(z));
}

std::optional<Allocation> fair_allocation_on(const Instance& inst, const ConsumptionGraph& g,
                                             const FairnessSpec& spec) {
  const GraphLp lp = fairness_lp(inst, g, spec);
  std::optional<std::vector<Rational>> point;
  if (lp.variables.empty()) {
    if (lp::satisfies(lp.program, {})) point.emplace();
  } else {
    point = lp::basic_feasible_point(lp.program);
  }
  if (!point) return std::nullopt;
  return allocation_from_lp(inst, g, lp, *point);
}

namespace {

SolveResult finish(const Instance& inst, const FairnessSpec& spec, Objective objective, Allocation alloc,
                   std::size_t examined) {
  if (!is_fair(inst, alloc, spec)) throw std::logic_error("solver produced an unfair allocation");
  WeightCertificate cert = po_weights(inst, alloc);
  SharingStats stats = sharing_stats(inst, alloc);
  Rational value = allocation_objective(inst, alloc, objective);
  return SolveResult{std::move(alloc), std::move(stats), std::move(cert), examined, std::move(value)};
}

}  // namespace

SolveResult solve_min_sharing(const Instance& inst, const FairnessSpec& spec, Objective objective,
                              const FpoGraphSet& graphs) {
  spec.validate(inst.agents());
  // A fair fPO allocation with at most n-1 sharings exists whenever any fair allocation does,
  // for unweighted fairness and for (weighted) proportionality, which survives Pareto
  // improvement. Weighted envy-freeness has no such guarantee, so nothing is skipped there.
  const bool skip_beyond_n_minus_1 =
      objective == Objective::Sharings && (!spec.weights || spec.kind == FairnessKind::Proportional);
  std::vector<std::pair<Rational, const ConsumptionGraph*>> ranked;
  for (const auto& g : graphs) {
    if (skip_beyond_n_minus_1 && g.num_sharings() > inst.agents() - 1) continue;
    ranked.emplace_back(graph_objective(inst, g, objective), &g);
  }
  // Stable sort keeps the canonical order among equal objective values.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::size_t examined = 0;
  for (const auto& [value, g] : ranked) {
    ++examined;
    if (auto alloc = fair_allocation_on(inst, *g, spec)) {
      return finish(inst, spec, objective, std::move(*alloc), examined);
    }
  }
  throw NoFairAllocationError(std::string("no fair fPO allocation exists (") + to_string(spec.kind) +
                              (spec.weights ? ", weighted" : "") + ")");
}

SolveResult solve_min_sharing(const Instance& inst, const FairnessSpec& spec, Objective objective,
                              const SolveOptions& options) {
  return solve_min_sharing(inst, spec, objective, enumerate_fpo_graphs(inst, options.enumeration));
}

SolveResult solve_two_agents_fast(const Instance& inst, const FairnessSpec& spec) {
  if (inst.agents() != 2) throw PreconditionError("fast path requires exactly two agents");
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    if (classify_object(inst, o) != ObjectClass::PureGood) throw PreconditionError("fast path requires pure goods");
  }
  if (degeneracy(inst) != 0) throw PreconditionError("fast path requires non-degenerate valuations");
  spec.validate(2);

  const std::size_t m = inst.objects();
  std::vector<ObjectIndex> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ObjectIndex a, ObjectIndex b) {
    return inst.value(0, a) / inst.value(1, a) > inst.value(0, b) / inst.value(1, b);
  });

  // Agent 1 takes the first `prefix` goods in ratio order; `split` (if any) is shared with
  // agent 1 holding `x`.
  auto build = [&](std::size_t prefix, std::optional<std::size_t> split, const Rational& x) {
    RationalMatrix z(2, m, Rational(0));
    for (std::size_t p = 0; p < m; ++p) {
      const ObjectIndex o = order[p];
      if (split && p == *split) {
        z(0, o) = x;
        z(1, o) = 1 - x;
      } else {
        z(p < prefix ? 0 : 1, o) = 1;
      }
    }
    return Allocation(std::move(z));
  };

  std::size_t examined = 0;
  for (std::size_t prefix = 0; prefix <= m; ++prefix) {
    ++examined;
    Allocation alloc = build(prefix, std::nullopt, 0);
    if (is_fair(inst, alloc, spec)) return finish(inst, spec, Objective::Sharings, std::move(alloc), examined);
  }
  for (std::size_t p = 0; p < m; ++p) {
    ++examined;
    // Each slack is affine in x: s(x) = s0 + (s1 - s0) x.
    const auto at0 = fairness_slacks(inst, build(p, p, 0), spec);
    const auto at1 = fairness_slacks(inst, build(p, p, 1), spec);
    Rational lo = 0, hi = 1;
    bool feasible = true;
    for (std::size_t k = 0; k < at0.size() && feasible; ++k) {
      const Rational slope = at1[k] - at0[k];
      if (slope > 0) {
        lo = std::max(lo, Rational(-at0[k] / slope));
      } else if (slope < 0) {
        hi = std::min(hi, Rational(at0[k] / -slope));
      } else if (at0[k] < 0) {
        feasible = false;
      }
    }
    if (feasible && lo <= hi) return finish(inst, spec, Objective::Sharings, build(p, p, lo), examined);
  }
  throw NoFairAllocationError("no fair fPO allocation with at most one sharing");
}

Allocation solve_consensus(const Instance& inst) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.objects();
  auto var = [&](AgentIndex i, ObjectIndex o) { return i * m + o; };
  lp::LinearProgram program(n * m);
  for (std::size_t o = 0; o < m; ++o) {
    std::vector<Rational> row(n * m, Rational(0));
    for (std::size_t i = 0; i < n; ++i) row[var(i, o)] = 1;
    program.add_constraint(std::move(row), lp::Relation::Equal, 1);
  }
  // The bundle of agent n is then pinned by the column sums.
  for (std::size_t i = 0; i < n; ++i) {
    const Rational target = inst.total_value(i) / Rational(static_cast<unsigned long>(n));
    for (std::size_t j = 0; j + 1 < n; ++j) {
      std::vector<Rational> row(n * m, Rational(0));
      for (std::size_t o = 0; o < m; ++o) row[var(j, o)] = inst.value(i, o);
      program.add_constraint(std::move(row), lp::Relation::Equal, target);
    }
  }
  const auto point = lp::basic_feasible_point(program);
  if (!point) throw std::logic_error("consensus LP infeasible although the equal split satisfies it");

  RationalMatrix z(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < m; ++o) z(i, o) = (*point)[var(i, o)];
  }
  Allocation alloc(std::move(z));
  for (std::size_t i = 0; i < n; ++i) {
    const Rational target = inst.total_value(i) / Rational(static_cast<unsigned long>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (utility_of_bundle(inst, alloc, i, j) != target) throw std::logic_error("consensus equality violated");
    }
  }
  if (sharing_stats(inst, alloc).num_sharings > n * (n - 1)) throw std::logic_error("consensus vertex shares too much");
  return alloc;
}

CheckReport check_allocation(const Instance& inst, const Allocation& alloc, const FairnessSpec& spec) {
  require_same_shape(inst, alloc);
  CheckReport report;
  report.fair = is_fair(inst, alloc, spec);
  report.stats = sharing_stats(inst, alloc);
  report.utilities = utilities(inst, alloc);
  const ConsumptionGraph g = ucg_of(alloc);
  report.nonmalicious = is_nonmalicious(inst, g);
  report.violating_cycle = find_violating_cycle(dcg_of(inst, g));
  report.fpo = report.nonmalicious && !report.violating_cycle;
  if (report.fpo) report.certificate = po_weights(inst, g);
  return report;
}

}  // namespace fairshare
