#include "fairshare/fairness.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairshare {

void FairnessSpec::validate(std::size_t n) const {
  if (!weights) return;
  if (weights->size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " weights, got " +
                                std::to_string(weights->size()));
  }
  Rational sum = 0;
  for (const auto& w : *weights) {
    if (w <= 0) throw std::invalid_argument("weights must be strictly positive");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("weights must sum to 1, got " + format_rational(sum));
}

Rational FairnessSpec::weight(AgentIndex i, std::size_t n) const {
  if (weights) return (*weights)[i];
  return Rational(1, static_cast<unsigned long>(n));
}

const char* to_string(FairnessKind kind) {
  return kind == FairnessKind::EnvyFree ? "ef" : "prop";
}

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::Sharings: return "sharings";
    case Objective::SharedObjects: return "shared-objects";
    case Objective::SharedValue: return "shared-value";
    case Objective::AnyFeasible: return "feasible";
  }
  return "?";
}

std::vector<Rational> fairness_slacks(const Instance& inst, const Allocation& alloc,
                                      const FairnessSpec& spec) {
  require_same_shape(inst, alloc);
  const std::size_t n = inst.agents();
  spec.validate(n);
  std::vector<Rational> slacks;
  if (spec.kind == FairnessKind::Proportional) {
    for (std::size_t i = 0; i < n; ++i) {
      slacks.push_back(utility(inst, alloc, i) - spec.weight(i, n) * inst.total_value(i));
    }
    return slacks;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Rational own = utility(inst, alloc, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      slacks.push_back(spec.weight(j, n) * own - spec.weight(i, n) * utility_of_bundle(inst, alloc, i, j));
    }
  }
  return slacks;
}

bool is_fair(const Instance& inst, const Allocation& alloc, const FairnessSpec& spec) {
  const auto slacks = fairness_slacks(inst, alloc, spec);
  return std::all_of(slacks.begin(), slacks.end(), [](const Rational& s) { return s >= 0; });
}

}  // namespace fairshare
