#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knapq/engines.hpp"
#include "knapq/instance.hpp"
#include "knapq/prefix.hpp"

namespace knapq {

// ---- succinct set cover -------------------------------------------------

/// Conjunction of exactly three literals over distinct variables; positive
/// literal +v, negative literal -v, variables 1..n.
using Clause = std::array<int, 3>;
/// 3-DNF: satisfied when at least one clause is.
using Formula = std::vector<Clause>;

struct SuccinctSetCover {
  int n_vars = 0;
  int budget = 0;  // cover size bound k
  std::vector<Formula> formulas;

  int m() const { return static_cast<int>(formulas.size()); }
};

/// Structural validation (3 distinct variables per clause, every variable in
/// some formula, at least one clause per formula). Throws ParseError.
void validate_sscover(const SuccinctSetCover& ssc);

/// Does assignment (bit v-1 = value of x_v) satisfy formula j (0-based)?
bool satisfies_formula(const SuccinctSetCover& ssc, int j,
                       std::uint32_t assignment);

/// Whether every assignment satisfies some formula. nullopt when n_vars
/// exceeds max_vars (too large to enumerate).
std::optional<bool> covers_all_assignments(const SuccinctSetCover& ssc,
                                           int max_vars = 20);

/// Minimum number of formulas whose satisfying sets cover everything that
/// the full family covers. Enumerates assignments; n_vars <= 20.
int min_cover_size(const SuccinctSetCover& ssc);

SuccinctSetCover parse_sscover_json(const std::string& text);
SuccinctSetCover load_sscover_file(const std::string& path);

// ---- reduction from succinct set cover ----------------------------------

enum class ItemRole {
  variable_pos,   // v_i
  variable_neg,   // negated v_i
  clause_slot,    // a_{j,k,t}
  formula_yes,    // y_j (the only non-trivial items)
  formula_no,     // u_j
  formula_filler, // f_{j,k}
  full_capacity,  // the single item of weight B
};

struct RoleTag {
  ItemRole role{};
  int var = 0;      // 1-based, variable items
  int formula = 0;  // 1-based j
  int clause = 0;   // 1-based k
  int slot = 0;     // t in 0..3 for clause slots, k for fillers
};

/// The constructed instance plus everything needed to audit it: per-item
/// partial weights, per-block partial capacities, digit layout. Weights are
/// the base-10 concatenation of the partials (one guard digit per block);
/// the full-capacity item carries the capacity's own partials.
struct ReducedSetCoverInstance {
  Instance instance;
  SuccinctSetCover source;
  std::vector<RoleTag> roles;  // by id - 1

  std::vector<Int> partial_x;               // by id - 1
  std::vector<std::vector<Int>> partial_phi;  // [j][id - 1]
  std::vector<std::vector<Int>> partial_rho;  // [j][id - 1]
  Int capacity_x;
  std::vector<Int> capacity_phi, capacity_rho;
  int digits_x = 0;
  std::vector<int> digits_phi, digits_rho;
  int offset_x = 0;
  std::vector<int> offset_phi, offset_rho;

  Rat epsilon;  // upper slack of the y intervals, fixed to 1/(2m)
  int star_id = 0;
  std::vector<int> y_ids;  // by formula
  std::optional<bool> covers_all;  // assignment coverage, when computable
};

ReducedSetCoverInstance reduce_sscover(const SuccinctSetCover& ssc);

struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_pass() const;
  const PropertyCheck& operator[](const std::string& name) const;
};

/// Audits the construction by full packing enumeration (item count must fit
/// the enumeration cap): capacity-tightness of high-limit packings,
/// assignment representation, query/formula correspondence, partial-weight
/// decomposition, digit-overflow freedom.
PropertyReport verify_reduction_properties(const ReducedSetCoverInstance& red,
                                           const SolveCaps& caps = {});

// ---- reduction from subset sum -------------------------------------------

struct SubsetSumInstance {
  std::vector<Int> values;  // positive
  Int target;               // normalized to target <= total/2

  Int total() const;
  /// Applies target <- total - target when needed; validates positivity,
  /// total >= 3, 0 <= target <= total, and that some value is at most
  /// total/2 - 1. Throws ParamError naming the violated bound.
  static SubsetSumInstance normalized(std::vector<Int> values, Int target);
};

SubsetSumInstance parse_subset_sum_json(const std::string& text);
SubsetSumInstance load_subset_sum_file(const std::string& path);

struct SubsetSumReduction {
  PrefixProblem problem;
  ItemSet normal_ids;    // 1..n
  ItemSet blocking_ids;  // n+1..2n
  Rat epsilon;
  Rat c;
};

/// Prefix-problem instance whose feasible solutions of size < n correspond
/// exactly to subsets summing to the target. c >= 1 scales the threshold
/// (threshold = c * p*). With c = 1 the blocking items degenerate to
/// trivial ones (their profit equals their upper limit).
SubsetSumReduction reduce_subset_sum(const SubsetSumInstance& ss, const Rat& c,
                                     const SolveCaps& caps = {});

// ---- reduction from knapsack decision ------------------------------------

/// Appends one capacity-weight item with interval (0, beta*D) and profit
/// min(D,1)/2 to an all-trivial instance. The empty query set is
/// (alpha,beta)-feasible on the result iff the original optimum is >= D.
Instance reduce_knapsack_decision(const Instance& trivial_knapsack,
                                  const Rat& decision_threshold,
                                  const Rat& alpha, const Rat& beta);

}  // namespace knapq
