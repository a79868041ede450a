#include <doctest.h>

#include <random>

#include <knapq/errors.hpp>
#include <knapq/pipeline.hpp>
#include <knapq/random_gen.hpp>
#include <knapq/verify.hpp>

#include "helpers.hpp"

using namespace knapq;
using testutil::make_instance;

TEST_CASE("selection_epsilon rounds down on a 10^-6 grid") {
  for (Rat eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 7), Rat(9, 10)}) {
    Rat r = selection_epsilon(eps);
    CHECK(denominator(r) <= Int(1'000'000));
    CHECK(r >= 0);
    CHECK(r < 1);
    // r <= 1 - sqrt(1-eps)  <=>  (1 - r)^2 >= 1 - eps
    CHECK((Rat(1) - r) * (Rat(1) - r) >= Rat(1) - eps);
    // and the next grid point would overshoot
    Rat next = r + Rat(1, 1'000'000);
    CHECK((Rat(1) - next) * (Rat(1) - next) < Rat(1) - eps);
  }
  CHECK_THROWS_AS(selection_epsilon(Rat(0)), ParamError);
  CHECK_THROWS_AS(selection_epsilon(Rat(1)), ParamError);
}

TEST_CASE("select_packing basics") {
  // all trivial: no non-trivial members in the packing
  Instance triv = make_instance({{1, "2"}, {2, "3"}, {3, "4"}}, 4);
  auto sel = select_packing(triv, Rat(1, 4));
  CHECK(profit(triv, sel.packing) ==
        knapsack_opt(triv, plain_profits(triv)).value);
  for (int id : sel.packing) CHECK(triv.trivial(id));

  // one dominant non-trivial item -> budget 1 suffices
  Instance dom = make_instance({{5, "100", "0", "101"}, {1, "1"}}, 5);
  auto d = select_packing(dom, Rat(1, 4));
  CHECK(d.l_star == 1);
  CHECK(d.packing == ItemSet{1});
}

TEST_CASE("select_packing guarantees on random instances") {
  std::mt19937_64 rng(79);
  const Rat eps(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    RandomInstanceParams params;
    params.n = 2 + static_cast<int>(rng() % 8);
    params.seed = rng();
    Instance inst = random_instance(params);
    auto sel = select_packing(inst, eps);
    Rat p_star = knapsack_opt(inst, plain_profits(inst)).value;
    CHECK(profit(inst, sel.packing) >= (Rat(1) - eps) * p_star);
    CHECK(is_packing(inst, sel.packing));
    int nontrivial = 0;
    for (int id : sel.packing)
      if (!inst.trivial(id)) ++nontrivial;
    auto q_star = brute_force_optimal_query_set(inst, Rat(1), Rat(1));
    CHECK(nontrivial <= static_cast<int>(q_star.size()));
  }
}

TEST_CASE("select_packing returns the smallest qualifying budget") {
  std::mt19937_64 rng(97);
  const Rat eps(1, 3);
  const Rat inner = selection_epsilon(eps);
  for (int trial = 0; trial < 30; ++trial) {
    RandomInstanceParams params;
    params.n = 2 + static_cast<int>(rng() % 7);
    params.seed = rng();
    Instance inst = random_instance(params);
    auto sel = select_packing(inst, eps);
    auto all = knapsack_opt_2d_all(inst, plain_profits(inst));
    Rat target =
        (Rat(1) - inner) * all[static_cast<std::size_t>(inst.n())].value;
    CHECK(all[static_cast<std::size_t>(sel.l_star)].value >= target);
    for (int l = 1; l < sel.l_star; ++l)
      CHECK(all[static_cast<std::size_t>(l)].value < target);
  }
}

TEST_CASE("run_pipeline on an all-trivial instance") {
  Instance triv = make_instance({{1, "2"}, {2, "3"}}, 3);
  PipelineParams params;
  params.epsilon = Rat(1, 4);
  auto res = run_pipeline(triv, params);
  CHECK(res.query_set.empty());
  CHECK(check_alpha_beta_feasible(triv, res.query_set, Rat(1), Rat(1))
            .feasible);
}

TEST_CASE("pipeline guarantees, both modes, random instances") {
  std::mt19937_64 rng(83);
  const Rat eps(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    RandomInstanceParams params;
    params.n = 2 + static_cast<int>(rng() % 8);
    params.seed = rng();
    Instance inst = random_instance(params);
    auto q_star = brute_force_optimal_query_set(inst, Rat(1), Rat(1));
    Rat p_star = knapsack_opt(inst, plain_profits(inst)).value;

    PipelineParams pp;
    pp.epsilon = eps;
    auto res = run_pipeline(inst, pp);
    CHECK(res.threshold >= p_star);
    CHECK(check_alpha_beta_feasible(inst, res.query_set, Rat(4, 3), Rat(5, 2))
              .feasible);
    CHECK(res.query_set.size() <= 2 * q_star.size());
    // components partition the query set
    CHECK(res.from_packing.unite(res.from_threshold).unite(res.from_prefix) ==
          res.query_set);
    CHECK(res.from_packing.minus(res.query_set).empty());
    // the packing certifies the alpha guarantee from queried + trivial items
    ItemSet qt = res.query_set.unite(inst.trivial_ids());
    for (int id : res.packing) CHECK(qt.contains(id));
    CHECK(profit(inst, res.packing) * Rat(4, 3) >= p_star);

    pp.mode = PipelineMode::polynomial;
    auto poly = run_pipeline(inst, pp);
    CHECK(check_alpha_beta_feasible(inst, poly.query_set, Rat(4, 3), Rat(5))
              .feasible);
    CHECK(poly.query_set.size() <= 2 * q_star.size());
    // relaxed prefix bound collapses to 3D once the heavy items are queried
    CHECK(prefix_upper_after(inst, poly.query_set) <= 3 * poly.threshold);
  }
}

TEST_CASE("items above the threshold are in every feasible query set") {
  std::mt19937_64 rng(89);
  int exercised = 0;
  for (int trial = 0; trial < 60 && exercised < 10; ++trial) {
    RandomInstanceParams params;
    params.n = 2 + static_cast<int>(rng() % 7);
    params.seed = rng();
    Instance inst = random_instance(params);
    PipelineParams pp;
    pp.epsilon = Rat(1, 4);
    auto res = run_pipeline(inst, pp);
    if (res.from_threshold.empty()) continue;
    ++exercised;
    for (int id : res.from_threshold) {
      // dropping the item breaks condition 2 at beta = 1
      QuerySet without = res.query_set.minus(ItemSet{id});
      Rat worst = max_upper_limit(inst, without).value;
      Rat p_star = knapsack_opt(inst, plain_profits(inst)).value;
      CHECK(worst > p_star);
    }
  }
  CHECK(exercised > 0);
}

TEST_CASE("pipeline epsilon validation") {
  Instance inst = make_instance({{1, "1"}}, 1);
  PipelineParams pp;
  pp.epsilon = Rat(0);
  CHECK_THROWS_AS(run_pipeline(inst, pp), ParamError);
  pp.epsilon = Rat(1);
  CHECK_THROWS_AS(run_pipeline(inst, pp), ParamError);
  CHECK_THROWS_AS(select_packing(inst, Rat(3, 2)), ParamError);
}
