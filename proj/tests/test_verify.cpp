#include <doctest.h>

#include <random>

#include <knapq/errors.hpp>
#include <knapq/prefix.hpp>
#include <knapq/random_gen.hpp>
#include <knapq/verify.hpp>

#include "helpers.hpp"

using namespace knapq;
using testutil::make_instance;

TEST_CASE("check_feasible basics") {
  Instance inst = make_instance(
      {{2, "1", "0", "10"}, {3, "5", "0", "6"}, {4, "4"}}, 5);
  auto all = check_feasible(inst, {1, 2, 3});
  CHECK(all.feasible);
  CHECK(all.p_star == Rat(6));
  CHECK(all.witness_packing.has_value());
  CHECK(!all.violating_packing.has_value());
  CHECK(profit(inst, *all.witness_packing) == all.p_star);

  // single non-trivial item filling the knapsack, U > p*
  Instance one = make_instance({{5, "3", "0", "9"}}, 5);
  auto bad = check_feasible(one, {});
  CHECK(!bad.feasible);
  CHECK(bad.violating_packing == ItemSet{1});
  CHECK(bad.max_upper_after == Rat(9));
  CHECK(!bad.witness_packing.has_value());
}

TEST_CASE("check_feasible matches the covering-constraint enumeration") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    RandomInstanceParams params;
    params.n = 8;
    params.seed = rng();
    Instance inst = random_instance(params);
    ItemSet q = testutil::mask_to_set(
        static_cast<std::uint32_t>(rng() % (1u << inst.n())));
    auto rep = check_feasible(inst, q);
    CHECK(rep.feasible == testutil::feasible_by_constraints(inst, q));
  }
}

TEST_CASE("check_alpha_beta_feasible") {
  CHECK_THROWS_AS(
      check_alpha_beta_feasible(make_instance({{1, "1"}}, 1), {}, Rat(1, 2),
                                Rat(1)),
      ParamError);

  // alpha = beta = 1 reduces to plain feasibility
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    RandomInstanceParams params;
    params.n = 7;
    params.seed = rng();
    Instance inst = random_instance(params);
    ItemSet q = testutil::mask_to_set(
        static_cast<std::uint32_t>(rng() % (1u << inst.n())));
    auto a = check_feasible(inst, q);
    auto b = check_alpha_beta_feasible(inst, q, Rat(1), Rat(1));
    CHECK(a.feasible == b.feasible);
    // plain feasibility implies (alpha,beta)-feasibility for all params
    if (a.feasible) {
      CHECK(check_alpha_beta_feasible(inst, q, Rat(2), Rat(3, 2)).feasible);
      CHECK(check_alpha_beta_feasible(inst, q, Rat(5), Rat(7)).feasible);
    }
  }
}

TEST_CASE("condition 1 does not follow from condition 2") {
  // Big non-trivial item alone reaches p*; leaving it unqueried violates
  // only the witness condition once beta absorbs the upper limits.
  Instance inst = make_instance({{5, "10", "0", "11"}, {1, "1"}}, 5);
  // p* = 10. Q = {}: U*(Q) = 11 <= 2 * 10, but best packing in I_T is 1 < 5.
  auto rep = check_alpha_beta_feasible(inst, {}, Rat(2), Rat(2));
  CHECK(!rep.feasible);
  CHECK(!rep.violating_packing.has_value());  // condition 2 held
  CHECK(!rep.witness_packing.has_value());
}

TEST_CASE("brute_force_optimal_query_set") {
  // all trivial -> empty
  Instance triv = make_instance({{1, "2"}, {2, "3"}}, 3);
  CHECK(brute_force_optimal_query_set(triv, Rat(1), Rat(1)).empty());

  // single non-trivial item with w = B and U > p*
  Instance one = make_instance({{5, "3", "0", "9"}, {1, "2"}}, 5);
  CHECK(brute_force_optimal_query_set(one, Rat(1), Rat(1)) == ItemSet{1});

  SolveCaps caps;
  caps.oracle_nontrivial = 0;
  CHECK_THROWS_AS(brute_force_optimal_query_set(one, Rat(1), Rat(1), caps),
                  EnumerationError);
}

TEST_CASE("query-set oracle agrees with an independent enumerator") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    RandomInstanceParams params;
    params.n = 7;
    params.seed = rng();
    Instance inst = random_instance(params);
    QuerySet fast = brute_force_optimal_query_set(inst, Rat(1), Rat(1));
    QuerySet slow = testutil::scan_min_feasible(inst, [&](const ItemSet& q) {
      return testutil::feasible_by_constraints(inst, q);
    });
    CHECK(fast == slow);
  }
}

TEST_CASE("alpha-beta query sets never exceed the strict one") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstanceParams params;
    params.n = 6;
    params.seed = rng();
    Instance inst = random_instance(params);
    auto strict = brute_force_optimal_query_set(inst, Rat(1), Rat(1));
    for (auto [a, b] : {std::pair{Rat(3, 2), Rat(2)}, {Rat(2), Rat(1)},
                        {Rat(1), Rat(3)}}) {
      auto relaxed = brute_force_optimal_query_set(inst, a, b);
      CHECK(relaxed.size() <= strict.size());
    }
    // querying all non-trivial items is always feasible
    CHECK(check_feasible(inst, inst.nontrivial_ids()).feasible);
  }
}

TEST_CASE("brute_force_prefix_opt") {
  Instance inst = make_instance(
      {{2, "1", "0", "10"}, {3, "5", "0", "6"}, {4, "4"}}, 5);
  // threshold at the empty-query prefix limit -> nothing to do
  Rat u0 = prefix_upper_after(inst, {});
  CHECK(brute_force_prefix_opt(inst, u0).empty());

  CHECK_THROWS_AS(brute_force_prefix_opt(inst, Rat(1)), ParamError);

  // minimality: no smaller subset is feasible
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstanceParams params;
    params.n = 7;
    params.seed = rng();
    Instance ri = random_instance(params);
    Rat p_star = knapsack_opt(ri, plain_profits(ri)).value;
    Rat hi = prefix_upper_after(ri, {});
    if (hi < p_star) hi = p_star;
    Rat d = p_star + (hi - p_star) * Rat(static_cast<int>(rng() % 5), 4);
    QuerySet q = brute_force_prefix_opt(ri, d);
    CHECK(prefix_upper_after(ri, q) <= d);
    const ItemSet nontrivial = ri.nontrivial_ids();
    const auto& pool = nontrivial.ids();
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
      std::vector<int> ids;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((mask >> i) & 1u) ids.push_back(pool[i]);
      if (ids.size() < q.size())
        CHECK(prefix_upper_after(ri, ItemSet::of(ids)) > d);
    }
  }
}
