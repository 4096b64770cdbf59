#include "fairshare/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fairshare {

Instance::Instance(RationalMatrix values, std::vector<std::string> agent_labels,
                   std::vector<std::string> object_labels)
    : values_(std::move(values)),
      agent_labels_(std::move(agent_labels)),
      object_labels_(std::move(object_labels)) {
  if (values_.rows() < 2) throw std::invalid_argument("an instance needs at least two agents");
  if (values_.cols() < 1) throw std::invalid_argument("an instance needs at least one object");
  if (agent_labels_.empty()) {
    for (std::size_t i = 0; i < agents(); ++i) agent_labels_.push_back("agent" + std::to_string(i + 1));
  }
  if (object_labels_.empty()) {
    for (std::size_t o = 0; o < objects(); ++o) object_labels_.push_back("object" + std::to_string(o + 1));
  }
  if (agent_labels_.size() != agents()) throw std::invalid_argument("agent label count does not match valuation rows");
  if (object_labels_.size() != objects()) {
    throw std::invalid_argument("object label count does not match valuation columns");
  }
}

Rational Instance::total_value(AgentIndex i) const {
  Rational sum = 0;
  for (std::size_t o = 0; o < objects(); ++o) sum += values_(i, o);
  return sum;
}

Instance Instance::leading_agents(std::size_t k) const {
  if (k < 2 || k > agents()) throw std::invalid_argument("leading_agents: k out of range");
  RationalMatrix sub(k, objects());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t o = 0; o < objects(); ++o) sub(i, o) = values_(i, o);
  }
  return Instance(std::move(sub), {agent_labels_.begin(), agent_labels_.begin() + static_cast<std::ptrdiff_t>(k)},
                  object_labels_);
}

const char* to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::PureGood: return "pure-good";
    case ObjectClass::Good: return "good";
    case ObjectClass::Bad: return "bad";
    case ObjectClass::Neutral: return "neutral";
  }
  return "?";
}

ObjectClass classify_object(const Instance& inst, ObjectIndex o) {
  if (o >= inst.objects()) throw std::out_of_range("object index out of range");
  std::size_t positive = 0, negative = 0;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const int s = sgn(inst.value(i, o));
    if (s > 0) ++positive;
    if (s < 0) ++negative;
  }
  if (positive == inst.agents()) return ObjectClass::PureGood;
  if (positive > 0) return ObjectClass::Good;
  if (negative == inst.agents()) return ObjectClass::Bad;
  return ObjectClass::Neutral;
}

bool is_good(const Instance& inst, ObjectIndex o) {
  const auto c = classify_object(inst, o);
  return c == ObjectClass::PureGood || c == ObjectClass::Good;
}

Allocation::Allocation(RationalMatrix shares) : shares_(std::move(shares)) {
  if (shares_.rows() == 0 || shares_.cols() == 0) throw std::invalid_argument("empty allocation");
  for (std::size_t o = 0; o < shares_.cols(); ++o) {
    Rational column = 0;
    for (std::size_t i = 0; i < shares_.rows(); ++i) {
      const Rational& z = shares_(i, o);
      if (z < 0 || z > 1) {
        throw std::invalid_argument("share of agent " + std::to_string(i + 1) + " in object " +
                                    std::to_string(o + 1) + " is outside [0, 1]");
      }
      column += z;
    }
    if (column != 1) {
      throw std::invalid_argument("shares of object " + std::to_string(o + 1) + " sum to " +
                                  format_rational(column) + ", not 1");
    }
  }
}

Allocation Allocation::equal_split(std::size_t n, std::size_t m) {
  return Allocation(RationalMatrix(n, m, Rational(1, static_cast<unsigned long>(n))));
}

Allocation Allocation::indivisible(std::size_t n, std::span<const AgentIndex> owner) {
  RationalMatrix z(n, owner.size(), Rational(0));
  for (std::size_t o = 0; o < owner.size(); ++o) {
    if (owner[o] >= n) throw std::out_of_range("owner index out of range");
    z(owner[o], o) = 1;
  }
  return Allocation(std::move(z));
}

void require_same_shape(const Instance& inst, const Allocation& alloc) {
  if (inst.agents() != alloc.agents() || inst.objects() != alloc.objects()) {
    throw std::invalid_argument("allocation is " + std::to_string(alloc.agents()) + "x" +
                                std::to_string(alloc.objects()) + " but the instance is " +
                                std::to_string(inst.agents()) + "x" + std::to_string(inst.objects()));
  }
}

Rational utility_of_bundle(const Instance& inst, const Allocation& alloc, AgentIndex i, AgentIndex j) {
  require_same_shape(inst, alloc);
  if (i >= inst.agents() || j >= inst.agents()) throw std::out_of_range("agent index out of range");
  Rational u = 0;
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    if (alloc.share(j, o) != 0) u += inst.value(i, o) * alloc.share(j, o);
  }
  return u;
}

Rational utility(const Instance& inst, const Allocation& alloc, AgentIndex i) {
  return utility_of_bundle(inst, alloc, i, i);
}

std::vector<Rational> utilities(const Instance& inst, const Allocation& alloc) {
  std::vector<Rational> u;
  u.reserve(inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) u.push_back(utility(inst, alloc, i));
  return u;
}

SharingStats sharing_stats(const Instance& inst, const Allocation& alloc) {
  require_same_shape(inst, alloc);
  SharingStats stats;
  for (std::size_t o = 0; o < inst.objects(); ++o) {
    std::size_t consumers = 0;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      if (alloc.share(i, o) > 0) ++consumers;
    }
    stats.num_sharings += consumers - 1;
    if (consumers > 1) {
      ++stats.num_shared_objects;
      for (std::size_t i = 0; i < inst.agents(); ++i) {
        if (alloc.share(i, o) > 0) stats.shared_value += abs(inst.value(i, o));
      }
    }
  }
  return stats;
}

std::size_t degeneracy(const Instance& inst) {
  std::size_t largest = 0;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    for (std::size_t j = i + 1; j < inst.agents(); ++j) {
      std::size_t both_zero = 0;
      std::map<Rational, std::size_t> by_ratio;
      for (std::size_t o = 0; o < inst.objects(); ++o) {
        const Rational& a = inst.value(i, o);
        const Rational& b = inst.value(j, o);
        if (a == 0 && b == 0) {
          ++both_zero;
        } else if (sgn(a) * sgn(b) > 0) {
          ++by_ratio[a / b];
        }
      }
      std::size_t best = 0;
      for (const auto& [ratio, count] : by_ratio) best = std::max(best, count);
      largest = std::max(largest, best + both_zero);
    }
  }
  return largest == 0 ? 0 : largest - 1;
}

}  // namespace fairshare
