#include <doctest.h>

#include <random>

#include <knapq/errors.hpp>
#include <knapq/instance.hpp>
#include <knapq/random_gen.hpp>

#include "helpers.hpp"

using namespace knapq;
using testutil::make_instance;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("6/8") == Rat(3, 4));
  CHECK(parse_rational("5") == Rat(5));
  CHECK(parse_rational("-7/2") == Rat(-7, 2));
  CHECK(format_rational(Rat(6, 8)) == "3/4");
  CHECK(format_rational(Rat(5)) == "5/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
}

TEST_CASE("interval invariants") {
  CHECK_THROWS_AS(Interval::open(Rat(2), Rat(2)), ParseError);
  CHECK_THROWS_AS(Interval::open(Rat(3), Rat(2)), ParseError);
  auto iv = Interval::open(Rat(1), Rat(2));
  CHECK(!iv.trivial);
}

TEST_CASE("instance construction rejects violated invariants") {
  // weight above capacity
  CHECK_THROWS_AS(make_instance({{9, "1"}}, 5), ParseError);
  // profit outside the open interval
  std::vector<Item> items(1);
  items[0].id = 1;
  items[0].weight = 1;
  items[0].profit = Rat(5);
  items[0].interval = Interval::open(Rat(0), Rat(5));  // p == upper
  CHECK_THROWS_AS(Instance(std::move(items), Int(5)), ParseError);
  // gap in ids
  std::vector<Item> gap(2);
  gap[0].id = 1;
  gap[0].weight = 1;
  gap[0].profit = Rat(1);
  gap[0].interval = Interval::singleton(Rat(1));
  gap[1] = gap[0];
  gap[1].id = 3;
  CHECK_THROWS_AS(Instance(std::move(gap), Int(5)), ParseError);
  // negative profit
  std::vector<Item> neg(1);
  neg[0].id = 1;
  neg[0].weight = 1;
  neg[0].profit = Rat(-1);
  neg[0].interval = Interval::singleton(Rat(-1));
  CHECK_THROWS_AS(Instance(std::move(neg), Int(5)), ParseError);
}

TEST_CASE("profit, weight, upper_limit_after") {
  Instance inst = make_instance({{2, "1", "0", "10"}, {3, "5", "0", "6"}}, 5);
  CHECK(profit(inst, {}) == 0);
  CHECK(profit(inst, {1, 2}) == Rat(6));
  CHECK(weight(inst, {}) == 0);
  CHECK(weight(inst, {1, 2}) == 5);

  // all queried -> profit; nothing queried -> U_P
  CHECK(upper_limit_after(inst, {1, 2}, {1, 2}) == profit(inst, {1, 2}));
  CHECK(upper_limit_after(inst, {1, 2}, {}) == upper_limit(inst, {1, 2}));
  CHECK(upper_limit_after(inst, {1, 2}, {1}) == Rat(7));  // 1 + 6

  Instance single = make_instance({{1, "7"}}, 1);
  CHECK(profit(single, {1}) == Rat(7));

  CHECK_THROWS_AS(profit(inst, {1, 9}), ParamError);
}

TEST_CASE("upper_limit_after identity and monotonicity on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    RandomInstanceParams params;
    params.n = 7;
    params.seed = rng();
    Instance inst = random_instance(params);
    ItemSet p = testutil::mask_to_set(
        static_cast<std::uint32_t>(rng() % (1u << inst.n())));
    ItemSet q = testutil::mask_to_set(
        static_cast<std::uint32_t>(rng() % (1u << inst.n())));
    // U_P(Q) = U_P - sum_{i in P and Q} (U_i - p_i)
    Rat direct = upper_limit_after(inst, p, q);
    Rat alt = upper_limit(inst, p);
    for (int id : p)
      if (q.contains(id))
        alt -= inst.item(id).upper() - inst.item(id).profit;
    CHECK(direct == alt);

    // Q subset of Q' implies U_P(Q') <= U_P(Q)
    ItemSet q2 = q.unite(testutil::mask_to_set(
        static_cast<std::uint32_t>(rng() % (1u << inst.n()))));
    CHECK(upper_limit_after(inst, p, q2) <= direct);

    // U_P(Q) >= p(P), equality iff all non-trivial members queried
    CHECK(direct >= profit(inst, p));
    bool all_queried = true;
    for (int id : p)
      if (!inst.trivial(id) && !q.contains(id)) all_queried = false;
    CHECK((direct == profit(inst, p)) == all_queried);
  }
}

TEST_CASE("json round trip and diagnostics") {
  Instance inst = make_instance(
      {{2, "1", "0", "10"}, {3, "5", "0", "6"}, {4, "4"}}, 5);
  std::string text = instance_to_json(inst, Rat(7, 2));
  InstanceFile back = parse_instance_json(text);
  CHECK(back.instance.n() == 3);
  CHECK(back.instance.capacity() == 5);
  CHECK(back.threshold == Rat(7, 2));
  CHECK(instance_to_json(back.instance, back.threshold) == text);

  CHECK_THROWS_AS(parse_instance_json("{"), ParseError);
  CHECK_THROWS_AS(parse_instance_json("{\"capacity\": \"5\"}"), ParseError);
  // diagnostic names the offending field
  try {
    parse_instance_json(
        "{\"capacity\":\"5\",\"items\":[{\"id\":1,\"weight\":\"2\","
        "\"lower\":\"3\",\"upper\":\"1\",\"profit\":\"2\",\"trivial\":false}]}");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("items[0]") != std::string::npos);
  }
}

TEST_CASE("items may be listed in any order, ids must be 1..n") {
  std::string text =
      "{\"capacity\":\"5\",\"items\":["
      "{\"id\":2,\"weight\":\"3\",\"lower\":\"5\",\"upper\":\"5\","
      "\"profit\":\"5\",\"trivial\":true},"
      "{\"id\":1,\"weight\":\"2\",\"lower\":\"1\",\"upper\":\"1\","
      "\"profit\":\"1\",\"trivial\":true}]}";
  Instance inst = parse_instance_json(text).instance;
  CHECK(inst.item(1).weight == 2);
  CHECK(inst.item(2).weight == 3);

  std::string dup =
      "{\"capacity\":\"5\",\"items\":["
      "{\"id\":1,\"weight\":\"3\",\"lower\":\"5\",\"upper\":\"5\","
      "\"profit\":\"5\",\"trivial\":true},"
      "{\"id\":1,\"weight\":\"2\",\"lower\":\"1\",\"upper\":\"1\","
      "\"profit\":\"1\",\"trivial\":true}]}";
  CHECK_THROWS_AS(parse_instance_json(dup), ParseError);
}

TEST_CASE("with_queried collapses intervals") {
  Instance inst = make_instance({{2, "1", "0", "10"}, {3, "5", "0", "6"}}, 5);
  Instance queried = inst.with_queried({1});
  CHECK(queried.trivial(1));
  CHECK(queried.item(1).upper() == Rat(1));
  CHECK(!queried.trivial(2));
  CHECK(!inst.trivial(1));  // original untouched
}

TEST_CASE("item set ordering is sequence lexicographic") {
  CHECK(ItemSet{} < ItemSet{1});
  CHECK(ItemSet{1} < ItemSet{1, 2});
  CHECK(ItemSet{1, 2} < ItemSet{1, 3});
  CHECK(ItemSet{1, 3} < ItemSet{2});
  CHECK(ItemSet{1, 2, 9} < ItemSet{1, 3});
}
