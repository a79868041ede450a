#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "knapq/instance.hpp"

namespace knapq {

/// Resource bounds for the pseudopolynomial/enumeration engines.
struct SolveCaps {
  std::size_t dp_capacity = 1'000'000;  // max weight dimension of a DP table
  int enumeration_items = 22;           // max n for packing enumeration
  int oracle_nontrivial = 16;           // max |I \ I_T| for brute-force oracles
};

struct KnapsackSolution {
  Rat value;
  Packing packing;
};

/// One profit per item, indexed by id - 1. Values must be >= 0.
using ProfitVector = std::vector<Rat>;

ProfitVector plain_profits(const Instance& inst);
/// Profits U_i(Q) (the post-query upper limits).
ProfitVector upper_after_profits(const Instance& inst, const ItemSet& queried);

/// Exact 0/1 knapsack optimum by weight-indexed DP.
/// The witness packing is, among all optimal packings, one with the fewest
/// non-trivial members, lexicographic-smallest id sequence among those.
/// `allowed`, when given, restricts the selectable items.
/// Throws CapacityError when capacity > caps.dp_capacity.
KnapsackSolution knapsack_opt(const Instance& inst, const ProfitVector& profits,
                              const std::optional<ItemSet>& allowed = {},
                              const SolveCaps& caps = {});

/// Optimum over packings with at most `max_nontrivial` non-trivial members.
KnapsackSolution knapsack_opt_2d(const Instance& inst,
                                 const ProfitVector& profits,
                                 int max_nontrivial,
                                 const SolveCaps& caps = {});

/// All of knapsack_opt_2d(0..n) from a single table. Index l = bound.
std::vector<KnapsackSolution> knapsack_opt_2d_all(const Instance& inst,
                                                  const ProfitVector& profits,
                                                  const SolveCaps& caps = {});

/// max over packings P of U_P(Q), with an argmax packing.
KnapsackSolution max_upper_limit(const Instance& inst, const ItemSet& queried,
                                 const SolveCaps& caps = {});

/// DP when the capacity fits the cap, packing enumeration over the allowed
/// items when their count fits the enumeration cap, nullopt when neither
/// applies. Same witness tie-breaking on both routes.
std::optional<KnapsackSolution> solve_knapsack_auto(
    const Instance& inst, const ProfitVector& profits,
    const std::optional<ItemSet>& allowed = {}, const SolveCaps& caps = {});

/// Visits every packing (weight <= capacity) exactly once, as a sorted id
/// vector. DFS order; branches whose weight already exceeds the capacity are
/// pruned. Throws EnumerationError when n > caps.enumeration_items.
void for_each_packing(const Instance& inst,
                      const std::function<void(const std::vector<int>&)>& fn,
                      const SolveCaps& caps = {});

std::vector<Packing> enumerate_packings(const Instance& inst,
                                        const SolveCaps& caps = {});

}  // namespace knapq
