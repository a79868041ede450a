#pragma once

#include "knapq/instance.hpp"
#include "knapq/prefix.hpp"

namespace knapq {

enum class PipelineMode { pseudopolynomial, polynomial };

struct PipelineParams {
  Rat epsilon;  // in (0, 1)
  PipelineMode mode = PipelineMode::pseudopolynomial;
  int workers = 1;
  SolveCaps caps{};
  PrefixStats* stats = nullptr;
};

/// Rational lower bound of 1 - sqrt(1 - eps) with denominator 10^6, the
/// inner tolerance of select_packing. Rounding down only tightens the
/// selection threshold.
Rat selection_epsilon(const Rat& eps);

struct SelectedPacking {
  Packing packing;
  int l_star = 0;
  Rat value;
};

/// Smallest non-trivial-count budget l whose exact optimum reaches
/// (1 - selection_epsilon(eps)) of the unconstrained optimum; returns that
/// budget's witness packing. Guarantees p(P) >= (1-eps) p* and
/// |P \ I_T| <= |Q*|.
SelectedPacking select_packing(const Instance& inst, const Rat& epsilon,
                               const SolveCaps& caps = {});

struct PipelineResult {
  QuerySet query_set;
  Packing packing;
  Rat threshold;  // D
  Rat alpha_achieved;
  Rat beta_achieved;
  ItemSet from_packing;    // P \ I_T
  ItemSet from_threshold;  // {i : U_i > D} minus the packing component
  ItemSet from_prefix;     // prefix-problem solution on the queried clone
  int l_star = 0;
};

/// Pseudopolynomial mode: (1/(1-eps), 2+2eps)-feasible query set.
/// Polynomial mode: (1/(1-eps), 4+4eps)-feasible.
/// Both with |Q| <= 2 |Q*|.
PipelineResult run_pipeline(const Instance& inst, const PipelineParams& params);

}  // namespace knapq
