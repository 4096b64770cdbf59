#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairshare/rational.hpp"

namespace fairshare {

using AgentIndex = std::size_t;
using ObjectIndex = std::size_t;

/// Additive valuations of n agents over m divisible objects. Signs are unconstrained,
/// so goods, bads and neutral objects can be mixed freely.
class Instance {
 public:
  /// Labels default to "agent1".. / "object1".. when empty.
  /// Throws std::invalid_argument unless n >= 2, m >= 1 and label counts match.
  explicit Instance(RationalMatrix values, std::vector<std::string> agent_labels = {},
                    std::vector<std::string> object_labels = {});

  std::size_t agents() const { return values_.rows(); }
  std::size_t objects() const { return values_.cols(); }

  const Rational& value(AgentIndex i, ObjectIndex o) const { return values_(i, o); }
  const RationalMatrix& values() const { return values_; }

  const std::vector<std::string>& agent_labels() const { return agent_labels_; }
  const std::vector<std::string>& object_labels() const { return object_labels_; }

  /// Sum of agent i's values over all objects.
  Rational total_value(AgentIndex i) const;

  /// The instance formed by the first k agents (k >= 2).
  Instance leading_agents(std::size_t k) const;

 private:
  RationalMatrix values_;
  std::vector<std::string> agent_labels_;
  std::vector<std::string> object_labels_;
};

enum class ObjectClass { PureGood, Good, Bad, Neutral };

const char* to_string(ObjectClass c);

/// PureGood: all values positive. Good: some positive. Bad: all negative.
/// Neutral: no positive value and at least one zero.
ObjectClass classify_object(const Instance& inst, ObjectIndex o);

/// True for PureGood and Good.
bool is_good(const Instance& inst, ObjectIndex o);

/// Fractional allocation: z(i, o) in [0, 1] and every column sums to exactly one.
/// The invariant is checked on construction; instances are immutable afterwards.
class Allocation {
 public:
  explicit Allocation(RationalMatrix shares);

  static Allocation equal_split(std::size_t n, std::size_t m);
  /// owner[o] receives object o entirely.
  static Allocation indivisible(std::size_t n, std::span<const AgentIndex> owner);

  std::size_t agents() const { return shares_.rows(); }
  std::size_t objects() const { return shares_.cols(); }
  const Rational& share(AgentIndex i, ObjectIndex o) const { return shares_(i, o); }
  const RationalMatrix& shares() const { return shares_; }

  bool operator==(const Allocation&) const = default;

 private:
  RationalMatrix shares_;
};

/// Throws std::invalid_argument if the allocation does not fit the instance.
void require_same_shape(const Instance& inst, const Allocation& alloc);

/// u_i(z_i) = sum_o v(i, o) z(i, o).
Rational utility(const Instance& inst, const Allocation& alloc, AgentIndex i);

/// u_i(z_j): agent i's value for agent j's bundle.
Rational utility_of_bundle(const Instance& inst, const Allocation& alloc, AgentIndex i,
                           AgentIndex j);

std::vector<Rational> utilities(const Instance& inst, const Allocation& alloc);

struct SharingStats {
  std::size_t num_sharings = 0;
  std::size_t num_shared_objects = 0;
  /// Sum of |v(i, o)| over agents i holding a fraction strictly between 0 and 1 of o.
  Rational shared_value = 0;

  bool operator==(const SharingStats&) const = default;
};

SharingStats sharing_stats(const Instance& inst, const Allocation& alloc);

/// Largest number of objects on which some pair of agents has proportional values,
/// minus one (clamped at zero). Objects both agents value at zero join every ratio class.
std::size_t degeneracy(const Instance& inst);

}  // namespace fairshare
