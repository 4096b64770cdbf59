#include <doctest.h>

#include <random>

#include "fairshare/instances.hpp"
#include "fairshare/oracle.hpp"
#include "test_support.hpp"

using namespace fairshare;
using fairshare::testing::q;

namespace {

Rational min_ef_sharings(const Instance& inst) {
  return oracle::brute_min_objective(inst, FairnessSpec::envy_free(), Objective::Sharings).value;
}

}  // namespace

TEST_CASE("identical partition instances") {
  const auto inst = instances::identical_partition({3, 5, 8});
  CHECK(inst.values() == testing::matrix({{"3", "5", "8"}, {"3", "5", "8"}}));
  CHECK(min_ef_sharings(instances::identical_partition({1})) == 1);
  CHECK(min_ef_sharings(instances::identical_partition({2, 2})) == 0);
  CHECK_THROWS(instances::identical_partition({}));
  CHECK_THROWS(instances::identical_partition({3, 0}));
}

TEST_CASE("perturbed partition instances") {
  const auto inst = instances::perturbed_partition({3, 5, 8});
  CHECK(inst.value(1, 0) == q("3") + q("1/18"));
  CHECK(inst.value(1, 1) == q("5") + q("2/27"));
  CHECK(inst.value(1, 2) == q("8") + q("1/12"));
  for (const auto& a : std::vector<std::vector<long>>{{3, 5, 8}, {3, 5, 9}, {1, 2, 3, 4, 6}, {7}}) {
    const auto p = instances::perturbed_partition(a);
    CHECK(degeneracy(p) == 0);
    CHECK(p.total_value(1) - p.total_value(0) < q("1/2"));
    CHECK(p.total_value(1) > p.total_value(0));
  }
}

TEST_CASE("degeneracy family instances") {
  const auto inst = instances::degeneracy_family({3, 5, 8}, 7);
  CHECK(inst.objects() == 7);
  CHECK(degeneracy(inst) == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    Rational small = 0;
    for (std::size_t o = 3; o < 7; ++o) small += inst.value(i, o);
    CHECK(small < q("1/2"));
  }
  CHECK(min_ef_sharings(instances::degeneracy_family({2, 2, 4, 4}, 6)) == 0);
  CHECK(min_ef_sharings(instances::degeneracy_family({3, 5, 9}, 5)) == 1);
  CHECK_THROWS(instances::degeneracy_family({3, 5, 8}, 6));
}

TEST_CASE("consensus tightness instances") {
  const auto two = instances::consensus_tightness(2);
  CHECK(two.values() == testing::matrix({{"3/2", "1/2"}, {"1/2", "3/2"}}));
  const auto three = instances::consensus_tightness(3);
  CHECK(three.objects() == 6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(three.total_value(i) == 6);
}

TEST_CASE("named fixtures") {
  const auto left = instances::fixture("fig1_left");
  REQUIRE(left.allocation);
  CHECK(is_fpo(left.instance, *left.allocation));
  const auto right = instances::fixture("fig1_right");
  REQUIRE(right.allocation);
  CHECK_FALSE(is_fpo(right.instance, *right.allocation));
  const auto goods = instances::fixture("identical_goods", 3);
  CHECK(goods.instance.agents() == 3);
  CHECK(goods.instance.objects() == 2);
  CHECK_FALSE(goods.allocation);
  CHECK_THROWS(instances::fixture("nope"));
}

TEST_CASE("random instances") {
  CHECK(instances::random(3, 4, 11, -5, 5).values() == instances::random(3, 4, 11, -5, 5).values());
  CHECK(instances::random(3, 4, 11, -5, 5).values() != instances::random(3, 4, 12, -5, 5).values());
  // The documented algorithm: row-major draws from mt19937_64, rejection-sampled into the range.
  const auto pinned = instances::random(2, 3, 42, 1, 100);
  std::mt19937_64 engine(42);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % 100;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t o = 0; o < 3; ++o) {
      std::uint64_t x;
      do {
        x = engine();
      } while (x >= limit);
      CHECK(pinned.value(i, o) == Rational(static_cast<long>(1 + x % 100)));
    }
  }
  CHECK_THROWS(instances::random(2, 2, 0, 5, 1));

  bool good = false, bad = false, impure = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = instances::random(3, 6, seed, -5, 5);
    for (std::size_t o = 0; o < inst.objects(); ++o) {
      const auto cls = classify_object(inst, o);
      good |= cls == ObjectClass::PureGood;
      bad |= cls == ObjectClass::Bad;
      impure |= cls == ObjectClass::Good;
    }
  }
  CHECK(good);
  CHECK(bad);
  CHECK(impure);
}
