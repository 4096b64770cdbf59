#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairshare/model.hpp"

namespace fairshare::instances {

/// Two agents with identical rows `a` (the Partition reduction).
Instance identical_partition(const std::vector<long>& a);

/// Two agents: row 1 = a, row 2 = a_o + o / (3m(o + 1)) for o = 1..m.
/// Throws std::invalid_argument if the perturbed matrix happens to be degenerate.
Instance perturbed_partition(const std::vector<long>& a);

/// Two agents: |a| big goods valued a_o by both, followed by (m - |a|)/2 pairs of small goods
/// (q_k, q'_k) with v1(q_k) = v2(q'_k) = (k + 1)/(4mk) and v1(q'_k) = v2(q_k) = 1/(4mk).
/// Degeneracy is |a| - 1.
Instance degeneracy_family(const std::vector<long>& a, std::size_t m);

/// n agents, n(n - 1) goods; agent i's big goods are [(i-1)(n-1), i(n-1)), valued n - 1/2,
/// all others (1/2)/(n - 1). Every row sums to n(n - 1).
Instance consensus_tightness(std::size_t n);

/// Farm, house and car valued (4, 5/2, 1) by Alice and (5/4, 2, 5) by Bob.
Instance fig1_left();
/// As fig1_left, but Alice values the house at 25.
Instance fig1_right();
/// Alice gets the farm, Bob the car, and the house is split in half.
Allocation fig1_allocation();

/// n agents, n - 1 goods, all valued 1.
Instance identical_goods(std::size_t n);

struct NamedFixture {
  Instance instance;
  std::optional<Allocation> allocation;
};

/// "fig1_left", "fig1_right", "identical_goods" (uses n). Throws std::invalid_argument otherwise.
NamedFixture fixture(const std::string& name, std::size_t n = 3);

/// Uniform integer valuations in [low, high], drawn from std::mt19937_64 by rejection
/// sampling, so the output is identical on every platform for a given seed.
Instance random(std::size_t n, std::size_t m, std::uint64_t seed, long low, long high);

}  // namespace fairshare::instances
