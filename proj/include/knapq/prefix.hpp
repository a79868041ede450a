#pragma once

#include <optional>
#include <vector>

#include "knapq/engines.hpp"
#include "knapq/instance.hpp"

namespace knapq {

/// Total order by optimistic density U_i(Q)/w_i, highest first, ties broken
/// by ascending id. Queried items use p_i/w_i.
struct DensityOrder {
  std::vector<int> order;    // ids, front = highest density
  std::vector<Rat> density;  // by id - 1
  int position(int id) const;
};

DensityOrder density_order(const Instance& inst, const ItemSet& queried);

/// Maximal contiguous initial segment of the density order whose weight
/// stays within the budget. The walk STOPS at the first item that does not
/// fit; later items are not considered even if they would fit.
struct PrefixInfo {
  std::vector<int> members_in_order;
  ItemSet members;
  Int weight;
  Rat upper_after;  // U over the members, post-query values
};

PrefixInfo optimistic_prefix(const Instance& inst, const ItemSet& queried,
                             const Int& budget);

/// U_{F(Q)}(Q) for the full-capacity prefix, without building PrefixInfo.
Rat prefix_upper_after(const Instance& inst, const ItemSet& queried);

struct PrefixProblem {
  Instance instance;
  Rat threshold;  // must be >= optimal knapsack profit
};

/// One guess of the algorithm: i1 = intended last item of the prefix,
/// i2 = intended first item outside it, plus whether each is queried.
/// A must be queried; R1/R2 are never queried; S1 items leave the prefix
/// when queried; S2 items stay in front of i1 either way. K/H bound the
/// queried weight from S1 (clamped at zero).
struct GuessContext {
  int i1 = 0;
  int i2 = 0;
  bool i1_queried = false;
  bool i2_queried = false;
  ItemSet A, R1, R2, S1, S2;
  int n1 = -1;  // filled by the solver loop
  int n2 = -1;
  Int K, H;
};

/// nullopt when the guess is internally inconsistent (wrong relative order,
/// a trivial item that would have to move, or an A item still between i1
/// and i2 after being queried).
std::optional<GuessContext> make_guess_context(const Instance& inst, int i1,
                                               bool i1_queried, int i2,
                                               bool i2_queried);

struct S1Item {
  int id = 0;
  Int weight;
  Rat value;  // U_i
};

struct S1Pick {
  ItemSet chosen;
  Rat objective;
};

/// max sum of values over subsets P with |P| = n1 and K <= w(P) <= H, by the
/// exact-weight table T[i][b][k]; nullopt when no such subset exists.
std::optional<S1Pick> solve_subproblem_s1_dp(const std::vector<S1Item>& items,
                                             const Int& K, const Int& H,
                                             int n1, const SolveCaps& caps = {});

struct S1LpPick {
  std::vector<Rat> assignment;  // aligned with items
  ItemSet chosen;               // items with x_i == 1 (fractions dropped)
  Rat objective;
  int fractional = 0;
};

/// Basic optimum of the relaxation that drops the K constraint and the
/// integrality: max value.x st weight.x <= H, sum x = n1, 0 <= x <= 1.
std::optional<S1LpPick> solve_subproblem_s1_lp(const std::vector<S1Item>& items,
                                               const Int& H, int n1);

struct PrefixStats {
  long long guesses = 0;
  long long pruned = 0;
  long long dp_solves = 0;
  long long lp_solves = 0;
  long long candidates = 0;
  int max_lp_fractional = 0;
};

struct PrefixOptions {
  int workers = 1;
  SolveCaps caps{};
  PrefixStats* stats = nullptr;
};

/// Minimum-cardinality Q with U_{F(Q)}(Q) <= threshold; exact.
/// Pseudopolynomial: refuses (CapacityError) when an S1 table would exceed
/// the cap, suggesting solve_prefix_lp.
QuerySet solve_prefix_optimal(const PrefixProblem& problem,
                              const PrefixOptions& opts = {});

/// Polynomial variant: |Q| <= |optimal| and
/// U_{F(Q)}(Q) <= threshold + 2 * max_i U_i.
QuerySet solve_prefix_lp(const PrefixProblem& problem,
                         const PrefixOptions& opts = {});

/// threshold + 2 * max_i U_i (the bound solve_prefix_lp guarantees).
Rat relaxed_prefix_bound(const Instance& inst, const Rat& threshold);

}  // namespace knapq
