#include "knapq/pipeline.hpp"

#include "knapq/errors.hpp"

namespace knapq {

Rat selection_epsilon(const Rat& eps) {
  if (!(eps > 0 && eps < 1))
    throw ParamError("epsilon must be in (0, 1)");
  const Int grid = 1'000'000;
  // smallest m with m^2 * q >= grid^2 * (q - p), so m/grid >= sqrt(1 - eps)
  const Int p = numerator(eps), q = denominator(eps);
  const Int target = grid * grid * (q - p);
  Int m = isqrt_floor(target / q);
  while (m * m * q < target) ++m;
  return Rat(grid - m, grid);
}

SelectedPacking select_packing(const Instance& inst, const Rat& epsilon,
                               const SolveCaps& caps) {
  if (!(epsilon > 0 && epsilon < 1))
    throw ParamError("epsilon must be in (0, 1)");
  SelectedPacking out;
  if (inst.n() == 0) {
    out.value = 0;
    return out;
  }
  const Rat eps_inner = selection_epsilon(epsilon);
  std::vector<KnapsackSolution> per_budget =
      knapsack_opt_2d_all(inst, plain_profits(inst), caps);
  const Rat target =
      (Rat(1) - eps_inner) * per_budget[static_cast<std::size_t>(inst.n())].value;
  for (int l = 1; l <= inst.n(); ++l) {
    if (per_budget[static_cast<std::size_t>(l)].value >= target) {
      out.l_star = l;
      out.packing = per_budget[static_cast<std::size_t>(l)].packing;
      out.value = per_budget[static_cast<std::size_t>(l)].value;
      return out;
    }
  }
  throw Error("internal: budget n always reaches the target");
}

PipelineResult run_pipeline(const Instance& inst,
                            const PipelineParams& params) {
  if (!(params.epsilon > 0 && params.epsilon < 1))
    throw ParamError("epsilon must be in (0, 1)");
  const Rat eps = params.epsilon;
  const Rat eps_prime = eps / (eps + 1);  // 1 - eps' = 1/(1+eps)

  PipelineResult res;
  SelectedPacking sel = select_packing(inst, eps_prime, params.caps);
  res.packing = sel.packing;
  res.l_star = sel.l_star;
  res.threshold = sel.value * (Rat(1) + eps);  // p(P) / (1 - eps')

  std::vector<int> from_packing;
  for (int id : sel.packing)
    if (!inst.trivial(id)) from_packing.push_back(id);
  res.from_packing = ItemSet::of(std::move(from_packing));

  std::vector<int> over;
  for (const Item& it : inst.items())
    if (it.upper() > res.threshold) over.push_back(it.id);
  ItemSet over_threshold = ItemSet::of(std::move(over));
  res.from_threshold = over_threshold.minus(res.from_packing);

  QuerySet pre = res.from_packing.unite(over_threshold);
  PrefixProblem sub{inst.with_queried(pre), res.threshold};
  PrefixOptions popts;
  popts.workers = params.workers;
  popts.caps = params.caps;
  popts.stats = params.stats;
  res.from_prefix = params.mode == PipelineMode::pseudopolynomial
                        ? solve_prefix_optimal(sub, popts)
                        : solve_prefix_lp(sub, popts);

  res.query_set = pre.unite(res.from_prefix);
  res.alpha_achieved = Rat(1) / (Rat(1) - eps);
  res.beta_achieved =
      (params.mode == PipelineMode::pseudopolynomial ? Rat(2) : Rat(4)) *
      (Rat(1) + eps);
  return res;
}

}  // namespace knapq
