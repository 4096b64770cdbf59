#include <doctest.h>

#include <random>

#include "fairshare/fairness.hpp"
#include "fairshare/instances.hpp"
#include "fairshare/model.hpp"
#include "test_support.hpp"

using namespace fairshare;
using fairshare::testing::q;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(Rational(-3)) == "-3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("instance and allocation validation") {
  CHECK_THROWS(Instance(RationalMatrix(1, 3)));
  CHECK_THROWS(Instance(RationalMatrix(2, 0)));
  CHECK_NOTHROW(testing::instance({{"-1", "2"}, {"0", "-3"}}));

  RationalMatrix bad_sum(2, 1);
  bad_sum(0, 0) = Rational(1, 2);
  bad_sum(1, 0) = Rational(1, 3);
  CHECK_THROWS(Allocation(bad_sum));
  RationalMatrix out_of_range(2, 1);
  out_of_range(0, 0) = Rational(3, 2);
  out_of_range(1, 0) = Rational(-1, 2);
  CHECK_THROWS(Allocation(out_of_range));

  const auto inst = testing::instance({{"1", "2"}, {"3", "4"}});
  CHECK_THROWS(require_same_shape(inst, Allocation::equal_split(2, 3)));
}

TEST_CASE("object classification") {
  const auto fig = instances::fig1_left();
  CHECK(classify_object(fig, 0) == ObjectClass::PureGood);
  const auto inst = testing::instance({{"0", "-1", "-1", "0"}, {"0", "2", "-3", "-2"}});
  CHECK(classify_object(inst, 0) == ObjectClass::Neutral);
  CHECK(classify_object(inst, 1) == ObjectClass::Good);
  CHECK(classify_object(inst, 2) == ObjectClass::Bad);
  CHECK(classify_object(inst, 3) == ObjectClass::Neutral);
  CHECK_THROWS_AS(classify_object(inst, 4), std::out_of_range);
}

TEST_CASE("utilities on the fig1 fixture") {
  const auto fig = instances::fig1_left();
  const auto alloc = instances::fig1_allocation();
  CHECK(utility(fig, alloc, 0) == q("21/4"));
  CHECK(utility(fig, alloc, 1) == 6);
  CHECK(utility_of_bundle(fig, alloc, 0, 1) == q("9/4"));
  CHECK(utility_of_bundle(fig, alloc, 1, 0) == q("9/4"));
  CHECK(utility(fig, Allocation::equal_split(2, 3), 0) == q("15/4"));

  const Instance zeros(RationalMatrix(3, 4));
  std::mt19937_64 rng(3);
  CHECK(utility(zeros, testing::random_allocation(3, 4, rng), 2) == 0);
}

TEST_CASE("fairness predicates") {
  const auto fig = instances::fig1_left();
  const auto alloc = instances::fig1_allocation();
  CHECK(is_fair(fig, alloc, FairnessSpec::envy_free()));
  CHECK(is_fair(fig, Allocation::equal_split(2, 3), FairnessSpec::proportional()));

  const auto one = testing::instance({{"1"}, {"1"}});
  const std::vector<AgentIndex> owner{0};
  CHECK_FALSE(is_fair(one, Allocation::indivisible(2, owner), FairnessSpec::envy_free()));

  FairnessSpec weighted = FairnessSpec::proportional();
  weighted.weights = std::vector<Rational>{q("1/3"), q("1/2")};
  CHECK_THROWS(weighted.validate(2));
  weighted.weights = std::vector<Rational>{q("1/3"), q("2/3")};
  CHECK_NOTHROW(weighted.validate(2));
  weighted.weights = std::vector<Rational>{q("0"), q("1")};
  CHECK_THROWS(weighted.validate(2));
}

TEST_CASE("sharing statistics") {
  const auto fig = instances::fig1_left();
  const auto stats = sharing_stats(fig, instances::fig1_allocation());
  CHECK(stats.num_sharings == 1);
  CHECK(stats.num_shared_objects == 1);
  CHECK(stats.shared_value == q("9/2"));

  const std::vector<AgentIndex> owners{1, 0, 1};
  CHECK(sharing_stats(fig, Allocation::indivisible(2, owners)) == SharingStats{});

  const auto four = instances::random(4, 3, 9, 1, 9);
  RationalMatrix z(4, 3);
  for (std::size_t i = 0; i < 4; ++i) z(i, 0) = Rational(1, 4);
  z(2, 1) = 1;
  z(3, 2) = 1;
  const auto s = sharing_stats(four, Allocation(z));
  CHECK(s.num_shared_objects == 1);
  CHECK(s.num_sharings == 3);
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(instances::fig1_left()) == 0);
  CHECK(degeneracy(instances::identical_partition({3, 5, 8})) == 2);
  CHECK(degeneracy(testing::instance({{"1", "2", "3"}, {"2", "4", "5"}})) == 1);
  // Both-zero objects join every ratio class of the pair.
  CHECK(degeneracy(testing::instance({{"0", "1", "2"}, {"0", "3", "5"}})) == 1);
  CHECK(degeneracy(testing::instance({{"1", "-2"}, {"2", "3"}})) == 0);
  CHECK(degeneracy(testing::instance({{"-1", "-2"}, {"-2", "-4"}})) == 1);
}

TEST_CASE("property: random allocations respect core invariants") {
  std::mt19937_64 rng(20261019);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t m = 1 + trial % 6;
    const auto inst = instances::random(n, m, 1000 + trial, -6, 9);
    const auto alloc = testing::random_allocation(n, m, rng);
    for (std::size_t o = 0; o < m; ++o) {
      Rational column = 0;
      for (std::size_t i = 0; i < n; ++i) column += alloc.share(i, o);
      REQUIRE(column == 1);
    }
    const auto stats = sharing_stats(inst, alloc);
    CHECK(stats.num_shared_objects <= stats.num_sharings);
    CHECK(stats.num_sharings <= (n - 1) * m);
    if (is_fair(inst, alloc, FairnessSpec::envy_free())) {
      CHECK(is_fair(inst, alloc, FairnessSpec::proportional()));
    }
  }
}

TEST_CASE("property: degeneracy is invariant under positive row scaling") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = instances::random(3, 6, seed, -3, 3);
    RationalMatrix scaled = inst.values();
    const Rational factor(static_cast<long>(seed % 7) + 2, 3);
    for (std::size_t o = 0; o < inst.objects(); ++o) scaled(seed % 3, o) *= factor;
    CHECK(degeneracy(Instance(scaled)) == degeneracy(inst));
  }
}

TEST_CASE("property: large prime ranges give non-degenerate instances") {
  int degenerate = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    if (degeneracy(instances::random(3, 6, seed, 1, 1'000'003)) != 0) ++degenerate;
  }
  CHECK(degenerate <= 2);
}
