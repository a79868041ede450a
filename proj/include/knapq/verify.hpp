#pragma once

#include <optional>

#include "knapq/engines.hpp"
#include "knapq/instance.hpp"

namespace knapq {

/// Outcome of a feasibility check. `feasible` holds exactly when a witness
/// is present and no violating packing exists; `max_upper_after` is the
/// maximum of U_P(Q) over all packings.
struct FeasibilityReport {
  bool feasible = false;
  Rat p_star;
  std::optional<Packing> witness_packing;
  std::optional<Packing> violating_packing;
  Rat max_upper_after;
};

/// Q is feasible iff after querying Q no packing's upper limit exceeds the
/// optimal profit (which also certifies an optimal packing inside Q u I_T).
FeasibilityReport check_feasible(const Instance& inst, const QuerySet& queried,
                                 const SolveCaps& caps = {});

/// Q is (alpha,beta)-feasible iff some packing inside Q u I_T reaches
/// p*/alpha AND every packing's post-query upper limit is <= beta * p*.
/// The two conditions are checked independently.
FeasibilityReport check_alpha_beta_feasible(const Instance& inst,
                                            const QuerySet& queried,
                                            const Rat& alpha, const Rat& beta,
                                            const SolveCaps& caps = {});

/// Minimum-cardinality (alpha,beta)-feasible set of non-trivial items, ties
/// broken lexicographically. Searches subsets by increasing cardinality.
QuerySet brute_force_optimal_query_set(const Instance& inst, const Rat& alpha,
                                       const Rat& beta,
                                       const SolveCaps& caps = {});

/// Minimum-cardinality Q with U_{F(Q)}(Q) <= threshold, same tie-break.
/// Requires threshold >= p* (ParamError otherwise).
QuerySet brute_force_prefix_opt(const Instance& inst, const Rat& threshold,
                                const SolveCaps& caps = {});

}  // namespace knapq
