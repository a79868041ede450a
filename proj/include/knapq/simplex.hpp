#pragma once

#include <optional>
#include <vector>

#include "knapq/numbers.hpp"

namespace knapq {

// Exact rational LP over the 2-constraint-plus-bounds polytope
//
//   max  objective . x
//   s.t. weight . x <= weight_bound
//        sum(x)     = cardinality
//        0 <= x_i  <= 1
//
// solved by a dense-tableau two-phase primal simplex with Bland's rule, so
// the returned optimum is a basic feasible solution (a vertex). A basic
// optimum of this polytope has at most two fractional coordinates.

struct BoxLpProblem {
  std::vector<Rat> objective;
  std::vector<Rat> weight;
  Rat weight_bound;
  int cardinality = 0;
};

struct BoxLpSolution {
  std::vector<Rat> x;
  Rat objective;
  int fractional_count() const;
};

/// nullopt when infeasible.
std::optional<BoxLpSolution> solve_box_lp(const BoxLpProblem& lp);

/// Independent self-check: enumerates every vertex (all 0/1 points with the
/// exact cardinality, plus all two-fractional points with the weight row
/// tight) and returns the best. Exponential; for small dimensions only.
std::optional<BoxLpSolution> solve_box_lp_vertex_scan(const BoxLpProblem& lp);

}  // namespace knapq
