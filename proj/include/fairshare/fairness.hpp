#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairshare/model.hpp"

namespace fairshare {

enum class FairnessKind { EnvyFree, Proportional };

/// Fairness notion plus optional entitlements. Without weights every agent is entitled to 1/n.
struct FairnessSpec {
  FairnessKind kind = FairnessKind::EnvyFree;
  std::optional<std::vector<Rational>> weights;

  static FairnessSpec envy_free() { return {FairnessKind::EnvyFree, std::nullopt}; }
  static FairnessSpec proportional() { return {FairnessKind::Proportional, std::nullopt}; }

  /// Throws std::invalid_argument unless weights are positive, sum to one and have length n.
  void validate(std::size_t n) const;

  /// Entitlement of agent i (1/n when unweighted).
  Rational weight(AgentIndex i, std::size_t n) const;
};

/// Which sharing measure the solver minimizes.
enum class Objective { Sharings, SharedObjects, SharedValue, AnyFeasible };

const char* to_string(FairnessKind kind);
const char* to_string(Objective objective);

/// One value per fairness inequality, each required to be >= 0:
///   EF:   w_j u_i(z_i) - w_i u_i(z_j)  for i != j  (ordered by i, then j)
///   Prop: u_i(z_i) - w_i V_i           for each i
/// Every slack is an affine function of the shares.
std::vector<Rational> fairness_slacks(const Instance& inst, const Allocation& alloc,
                                      const FairnessSpec& spec);

bool is_fair(const Instance& inst, const Allocation& alloc, const FairnessSpec& spec);

}  // namespace fairshare
