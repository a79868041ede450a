#include "knapq/verify.hpp"

#include <algorithm>

#include "knapq/errors.hpp"
#include "knapq/prefix.hpp"

namespace knapq {

namespace {

KnapsackSolution solve_or_throw(const Instance& inst,
                                const ProfitVector& profits,
                                const std::optional<ItemSet>& allowed,
                                const SolveCaps& caps) {
  auto sol = solve_knapsack_auto(inst, profits, allowed, caps);
  if (!sol)
    throw EnumerationError(
        "instance too large for an exact check: capacity exceeds the DP cap "
        "and item count exceeds the enumeration cap");
  return *sol;
}

ItemSet queried_or_trivial(const Instance& inst, const ItemSet& queried) {
  return queried.unite(inst.trivial_ids());
}

// Lexicographic k-subsets of `pool`; calls fn until it returns true.
bool first_subset(const std::vector<int>& pool, std::size_t k,
                  const std::function<bool(const ItemSet&)>& fn) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    std::vector<int> ids(k);
    for (std::size_t i = 0; i < k; ++i) ids[i] = pool[comb[i]];
    if (fn(ItemSet::of(std::move(ids)))) return true;
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return false;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace

FeasibilityReport check_feasible(const Instance& inst, const QuerySet& queried,
                                 const SolveCaps& caps) {
  for (int id : queried) inst.item(id);  // id validation
  FeasibilityReport rep;
  rep.p_star = solve_or_throw(inst, plain_profits(inst), std::nullopt, caps).value;
  KnapsackSolution worst =
      solve_or_throw(inst, upper_after_profits(inst, queried), std::nullopt,
                     caps);
  rep.max_upper_after = worst.value;
  rep.feasible = worst.value <= rep.p_star;
  if (rep.feasible) {
    KnapsackSolution inside =
        solve_or_throw(inst, plain_profits(inst),
                       queried_or_trivial(inst, queried), caps);
    if (inside.value != rep.p_star)
      throw Error("internal: feasible query set without an optimal packing "
                  "inside Q u I_T");
    rep.witness_packing = inside.packing;
  } else {
    rep.violating_packing = worst.packing;
  }
  return rep;
}

FeasibilityReport check_alpha_beta_feasible(const Instance& inst,
                                            const QuerySet& queried,
                                            const Rat& alpha, const Rat& beta,
                                            const SolveCaps& caps) {
  if (alpha < 1 || beta < 1)
    throw ParamError("alpha and beta must be >= 1");
  for (int id : queried) inst.item(id);
  FeasibilityReport rep;
  rep.p_star = solve_or_throw(inst, plain_profits(inst), std::nullopt, caps).value;

  KnapsackSolution inside = solve_or_throw(
      inst, plain_profits(inst), queried_or_trivial(inst, queried), caps);
  const bool cond1 = inside.value * alpha >= rep.p_star;

  KnapsackSolution worst = solve_or_throw(
      inst, upper_after_profits(inst, queried), std::nullopt, caps);
  rep.max_upper_after = worst.value;
  const bool cond2 = worst.value <= beta * rep.p_star;

  rep.feasible = cond1 && cond2;
  if (rep.feasible) rep.witness_packing = inside.packing;
  if (!cond2) rep.violating_packing = worst.packing;
  return rep;
}

QuerySet brute_force_optimal_query_set(const Instance& inst, const Rat& alpha,
                                       const Rat& beta, const SolveCaps& caps) {
  if (alpha < 1 || beta < 1)
    throw ParamError("alpha and beta must be >= 1");
  const ItemSet nontrivial = inst.nontrivial_ids();
  const std::vector<int>& pool = nontrivial.ids();
  if (static_cast<int>(pool.size()) > caps.oracle_nontrivial)
    throw EnumerationError("query-set oracle refused: " +
                           std::to_string(pool.size()) +
                           " non-trivial items exceeds cap " +
                           std::to_string(caps.oracle_nontrivial));
  const Rat p_star =
      solve_or_throw(inst, plain_profits(inst), std::nullopt, caps).value;
  const ProfitVector plain = plain_profits(inst);

  auto feasible = [&](const ItemSet& q) {
    KnapsackSolution worst =
        solve_or_throw(inst, upper_after_profits(inst, q), std::nullopt, caps);
    if (worst.value > beta * p_star) return false;
    KnapsackSolution inside =
        solve_or_throw(inst, plain, queried_or_trivial(inst, q), caps);
    return inside.value * alpha >= p_star;
  };

  QuerySet result;
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    bool found = first_subset(pool, k, [&](const ItemSet& q) {
      if (!feasible(q)) return false;
      result = q;
      return true;
    });
    if (found) return result;
  }
  throw Error("internal: querying all non-trivial items must be feasible");
}

QuerySet brute_force_prefix_opt(const Instance& inst, const Rat& threshold,
                                const SolveCaps& caps) {
  const Rat p_star =
      solve_or_throw(inst, plain_profits(inst), std::nullopt, caps).value;
  if (threshold < p_star)
    throw ParamError("prefix threshold " + format_rational(threshold) +
                     " is below the optimal profit " +
                     format_rational(p_star));
  const ItemSet nontrivial = inst.nontrivial_ids();
  const std::vector<int>& pool = nontrivial.ids();
  if (static_cast<int>(pool.size()) > caps.oracle_nontrivial)
    throw EnumerationError("prefix oracle refused: " +
                           std::to_string(pool.size()) +
                           " non-trivial items exceeds cap " +
                           std::to_string(caps.oracle_nontrivial));
  QuerySet result;
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    bool found = first_subset(pool, k, [&](const ItemSet& q) {
      if (prefix_upper_after(inst, q) > threshold) return false;
      result = q;
      return true;
    });
    if (found) return result;
  }
  throw Error("internal: querying all non-trivial items keeps the prefix "
              "limit at most p* <= threshold");
}

}  // namespace knapq
