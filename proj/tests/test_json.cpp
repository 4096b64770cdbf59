#include <doctest.h>

#include "fairshare/instances.hpp"
#include "fairshare/json_io.hpp"
#include "fairshare/solver.hpp"
#include "test_support.hpp"

using namespace fairshare;
using io::json;
using fairshare::testing::q;

TEST_CASE("rationals in JSON") {
  CHECK(io::rational_from_json(json(7)) == 7);
  CHECK(io::rational_from_json(json(-3)) == -3);
  CHECK(io::rational_from_json(json("2.5")) == q("5/2"));
  CHECK(io::rational_from_json(json("-3/4")) == q("-3/4"));
  CHECK(io::rational_from_json(json(0.1)) == q("1/10"));
  CHECK_THROWS(io::rational_from_json(json("1/0")));
  CHECK_THROWS(io::rational_from_json(json(true)));
  CHECK(io::rational_to_json(q("6/4")) == json("3/2"));
}

TEST_CASE("instance round trip") {
  const auto fig = instances::fig1_left();
  const json doc = io::instance_to_json(fig);
  CHECK(doc.at("agents") == json({"Alice", "Bob"}));
  CHECK(doc.at("valuations")[1][0] == json("5/4"));
  const auto back = io::instance_from_json(doc);
  CHECK(back.values() == fig.values());
  CHECK(back.object_labels() == fig.object_labels());

  const auto parsed = io::instance_from_json(json::parse(R"({"valuations": [[1, "2.5", "1/3"], [0, -1, "-0.5"]]})"));
  CHECK(parsed.agent_labels() == std::vector<std::string>{"agent1", "agent2"});
  CHECK(parsed.value(1, 2) == q("-1/2"));
}

TEST_CASE("malformed documents") {
  CHECK_THROWS(io::instance_from_json(json::parse(R"({"valuations": [[1, 2], [3]]})")));
  CHECK_THROWS(io::instance_from_json(json::parse(R"({"valuations": [[1, 2]]})")));
  CHECK_THROWS(io::instance_from_json(json::parse(R"({"agents": ["a"], "valuations": [[1], [2]]})")));
  CHECK_THROWS(io::instance_from_json(json::parse(R"([1, 2])")));
  CHECK_THROWS(io::allocation_from_json(json::parse(R"({"shares": [["1/2"], ["1/3"]]})")));
}

TEST_CASE("allocation and report documents") {
  const auto fig = instances::fig1_right();
  const auto alloc = instances::fig1_allocation();
  const json doc = io::allocation_to_json(fig, alloc);
  CHECK(doc.at("shares")[0][1] == json("1/2"));
  CHECK(doc.at("num_sharings") == 1);
  CHECK(doc.at("num_shared_objects") == 1);
  CHECK(io::allocation_from_json(doc) == alloc);

  const json report = io::check_report_to_json(fig, check_allocation(fig, alloc, FairnessSpec::envy_free()));
  CHECK(report.at("fpo") == false);
  CHECK(report.at("violating_cycle").at("product") == json("32/125"));
  CHECK(report.at("violating_cycle").at("nodes") == json({"Alice", "farm", "Bob", "house", "Alice"}));

  json approx = doc;
  io::add_decimal_approximations(approx);
  CHECK(approx.contains("approximate"));
  CHECK(approx.at("shares") == doc.at("shares"));
}
