#include "knapq/prefix.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>

#include "knapq/errors.hpp"
#include "knapq/simplex.hpp"

namespace knapq {

namespace {

Rat density_of(const Instance& inst, int id, bool queried) {
  const Item& it = inst.item(id);
  return Rat(queried ? it.profit : it.upper()) / Rat(it.weight);
}

// a strictly before b in the density order
bool key_before(const Rat& da, int a, const Rat& db, int b) {
  if (da != db) return da > db;
  return a < b;
}

}  // namespace

int DensityOrder::position(int id) const {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == id) return static_cast<int>(i);
  return -1;
}

DensityOrder density_order(const Instance& inst, const ItemSet& queried) {
  DensityOrder d;
  d.density.resize(static_cast<std::size_t>(inst.n()));
  d.order.resize(static_cast<std::size_t>(inst.n()));
  for (const Item& it : inst.items()) {
    d.density[static_cast<std::size_t>(it.id) - 1] =
        density_of(inst, it.id, queried.contains(it.id));
    d.order[static_cast<std::size_t>(it.id) - 1] = it.id;
  }
  std::sort(d.order.begin(), d.order.end(), [&](int a, int b) {
    return key_before(d.density[static_cast<std::size_t>(a) - 1], a,
                      d.density[static_cast<std::size_t>(b) - 1], b);
  });
  return d;
}

PrefixInfo optimistic_prefix(const Instance& inst, const ItemSet& queried,
                             const Int& budget) {
  if (budget < 0 || budget > inst.capacity())
    throw ParamError("prefix budget must be in [0, capacity]");
  DensityOrder d = density_order(inst, queried);
  PrefixInfo out;
  out.weight = 0;
  out.upper_after = 0;
  for (int id : d.order) {
    const Item& it = inst.item(id);
    if (out.weight + it.weight > budget) break;  // stop, do not skip
    out.weight += it.weight;
    out.upper_after += item_upper_after(inst, id, queried);
    out.members_in_order.push_back(id);
  }
  out.members = ItemSet::of(out.members_in_order);
  return out;
}

Rat prefix_upper_after(const Instance& inst, const ItemSet& queried) {
  std::vector<std::pair<Rat, int>> keys;
  keys.reserve(static_cast<std::size_t>(inst.n()));
  for (const Item& it : inst.items())
    keys.emplace_back(density_of(inst, it.id, queried.contains(it.id)), it.id);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    return key_before(a.first, a.second, b.first, b.second);
  });
  Int w = 0;
  Rat sum = 0;
  for (const auto& [dens, id] : keys) {
    const Item& it = inst.item(id);
    if (w + it.weight > inst.capacity()) break;
    w += it.weight;
    sum += item_upper_after(inst, id, queried);
  }
  return sum;
}

std::optional<GuessContext> make_guess_context(const Instance& inst, int i1,
                                               bool i1_queried, int i2,
                                               bool i2_queried) {
  if (i1 == i2) return std::nullopt;
  if (i1_queried && inst.trivial(i1)) return std::nullopt;
  if (i2_queried && inst.trivial(i2)) return std::nullopt;

  GuessContext ctx;
  ctx.i1 = i1;
  ctx.i2 = i2;
  ctx.i1_queried = i1_queried;
  ctx.i2_queried = i2_queried;

  const Rat d1 = density_of(inst, i1, i1_queried);
  const Rat d2 = density_of(inst, i2, i2_queried);
  if (!key_before(d1, i1, d2, i2)) return std::nullopt;

  auto between = [&](const Rat& d, int id) {
    return key_before(d1, i1, d, id) && key_before(d, id, d2, i2);
  };

  // A: items currently strictly between i1 and i2; they must be queried.
  std::vector<int> a_ids;
  for (const Item& it : inst.items()) {
    if (it.id == i1 || it.id == i2) continue;
    Rat d = density_of(inst, it.id, false);
    if (between(d, it.id)) {
      if (it.trivial()) return std::nullopt;  // cannot move when queried
      a_ids.push_back(it.id);
    }
  }
  ctx.A = ItemSet::of(a_ids);
  // Consistency: a queried A item must leave the (i1, i2) gap.
  for (int id : ctx.A) {
    Rat d = density_of(inst, id, true);
    if (between(d, id)) return std::nullopt;
  }

  std::vector<int> r1, r2, s1, s2;
  for (const Item& it : inst.items()) {
    if (it.id == i1 || it.id == i2 || ctx.A.contains(it.id)) continue;
    Rat d = density_of(inst, it.id, false);
    if (key_before(d2, i2, d, it.id)) {
      r1.push_back(it.id);
      continue;
    }
    if (!key_before(d, it.id, d1, i1)) return std::nullopt;  // unreachable
    Rat dq = density_of(inst, it.id, true);
    if (key_before(d2, i2, dq, it.id))
      s1.push_back(it.id);
    else if (between(dq, it.id))
      r2.push_back(it.id);
    else
      s2.push_back(it.id);
  }
  ctx.R1 = ItemSet::of(std::move(r1));
  ctx.R2 = ItemSet::of(std::move(r2));
  ctx.S1 = ItemSet::of(std::move(s1));
  ctx.S2 = ItemSet::of(std::move(s2));

  // Weight before i1 / i2 in the order after querying {flags} u A.
  ItemSet q1set = ctx.A;
  if (i1_queried) q1set = q1set.with(i1);
  if (i2_queried) q1set = q1set.with(i2);
  Int before1 = 0, before2 = 0;
  for (const Item& it : inst.items()) {
    Rat d = density_of(inst, it.id, q1set.contains(it.id));
    if (it.id != i1 && key_before(d, it.id, d1, i1)) before1 += it.weight;
    if (it.id != i2 && key_before(d, it.id, d2, i2)) before2 += it.weight;
  }
  ctx.K = before1 - inst.capacity() + inst.item(i1).weight;
  if (ctx.K < 0) ctx.K = 0;
  ctx.H = before2 - inst.capacity() + inst.item(i2).weight - 1;
  if (ctx.H < 0) ctx.H = 0;
  return ctx;
}

namespace {

// ---- S1 exact-weight table -------------------------------------------

template <typename PT>
struct S1Table {
  std::vector<S1Item> rows;  // ids descending; only items with w <= width
  std::size_t width = 0;     // effective H
  int kmax = 0;
  std::vector<PT> val;
  std::vector<std::uint8_t> reach;
  Int denominator = 1;
  std::vector<PT> scaled;  // aligned with rows

  std::size_t idx(std::size_t r, std::size_t b, std::size_t k) const {
    return (r * (width + 1) + b) * static_cast<std::size_t>(kmax + 1) + k;
  }

  void build() {
    const std::size_t s = rows.size();
    val.assign((s + 1) * (width + 1) * static_cast<std::size_t>(kmax + 1),
               PT{});
    reach.assign(val.size(), 0);
    reach[idx(0, 0, 0)] = 1;
    for (std::size_t r = 1; r <= s; ++r) {
      const std::size_t wi = rows[r - 1].weight.convert_to<std::size_t>();
      const PT& ui = scaled[r - 1];
      for (std::size_t b = 0; b <= width; ++b) {
        for (std::size_t k = 0; k <= static_cast<std::size_t>(kmax); ++k) {
          const std::size_t here = idx(r, b, k);
          const std::size_t skip = idx(r - 1, b, k);
          if (reach[skip]) {
            reach[here] = 1;
            val[here] = val[skip];
          }
          if (b >= wi && k >= 1) {
            const std::size_t take = idx(r - 1, b - wi, k - 1);
            if (reach[take]) {
              PT cand = val[take] + ui;
              if (!reach[here] || cand > val[here]) {
                reach[here] = 1;
                val[here] = std::move(cand);
              }
            }
          }
        }
      }
    }
  }

  // Smallest-b argmax in [lo, hi] at cardinality k, then backtrack deciding
  // the smallest id first and preferring to take it.
  std::optional<S1Pick> read(std::size_t lo, std::size_t hi, int n1) const {
    if (n1 < 0 || n1 > kmax) return std::nullopt;
    const std::size_t s = rows.size();
    std::optional<std::size_t> best_b;
    for (std::size_t b = lo; b <= hi && b <= width; ++b) {
      if (!reach[idx(s, b, static_cast<std::size_t>(n1))]) continue;
      if (!best_b ||
          val[idx(s, b, static_cast<std::size_t>(n1))] >
              val[idx(s, *best_b, static_cast<std::size_t>(n1))])
        best_b = b;
    }
    if (!best_b) return std::nullopt;

    S1Pick pick;
    pick.objective = Rat(Int(val[idx(s, *best_b, static_cast<std::size_t>(n1))]),
                         denominator);
    std::vector<int> chosen;
    std::size_t b = *best_b;
    std::size_t k = static_cast<std::size_t>(n1);
    for (std::size_t r = s; r >= 1; --r) {
      const std::size_t wi = rows[r - 1].weight.convert_to<std::size_t>();
      const PT& ui = scaled[r - 1];
      bool take = false;
      if (b >= wi && k >= 1 && reach[idx(r - 1, b - wi, k - 1)]) {
        PT cand = val[idx(r - 1, b - wi, k - 1)] + ui;
        take = cand == val[idx(r, b, k)];
      }
      if (take) {
        chosen.push_back(rows[r - 1].id);
        b -= wi;
        k -= 1;
      }
    }
    pick.chosen = ItemSet::of(std::move(chosen));
    return pick;
  }
};

struct S1Solver {
  bool use_small = false;
  S1Table<std::int64_t> small;
  S1Table<Int> big;
  std::size_t width = 0;
  bool empty_ok = true;  // width computed; tables built lazily by ctor

  S1Solver(const std::vector<S1Item>& items, const Int& h,
           const SolveCaps& caps) {
    Int selectable_weight = 0;
    std::vector<S1Item> sel;
    for (const S1Item& it : items) {
      if (it.weight < 1) throw ParamError("S1 item weight must be >= 1");
      if (it.weight > h) continue;  // can never be chosen
      sel.push_back(it);
      selectable_weight += it.weight;
    }
    Int eff = h < selectable_weight ? h : selectable_weight;
    if (eff > Int(caps.dp_capacity))
      throw CapacityError("S1 table width " + eff.str() +
                          " exceeds the DP capacity cap " +
                          std::to_string(caps.dp_capacity) +
                          "; use the LP variant (solve_prefix_lp)");
    width = eff.convert_to<std::size_t>();
    std::sort(sel.begin(), sel.end(),
              [](const S1Item& a, const S1Item& b) { return a.id > b.id; });
    std::vector<Rat> values;
    values.reserve(sel.size());
    for (const S1Item& it : sel) values.push_back(it.value);
    ScaledInts scaled = scale_to_integers(values);
    use_small = scaled.fits_int64;
    if (use_small) {
      small.rows = std::move(sel);
      small.width = width;
      small.kmax = static_cast<int>(small.rows.size());
      small.denominator = scaled.denominator;
      small.scaled = std::move(scaled.small);
      small.build();
    } else {
      big.rows = std::move(sel);
      big.width = width;
      big.kmax = static_cast<int>(big.rows.size());
      big.denominator = scaled.denominator;
      big.scaled = std::move(scaled.values);
      big.build();
    }
  }

  int selectable() const {
    return use_small ? static_cast<int>(small.rows.size())
                     : static_cast<int>(big.rows.size());
  }

  std::optional<S1Pick> read(const Int& k_bound, const Int& h_bound,
                             int n1) const {
    if (k_bound > Int(width)) return std::nullopt;
    std::size_t lo = k_bound <= 0 ? 0 : k_bound.convert_to<std::size_t>();
    std::size_t hi =
        h_bound > Int(width) ? width : h_bound.convert_to<std::size_t>();
    if (lo > hi) return std::nullopt;
    return use_small ? small.read(lo, hi, n1) : big.read(lo, hi, n1);
  }
};

}  // namespace

std::optional<S1Pick> solve_subproblem_s1_dp(const std::vector<S1Item>& items,
                                             const Int& K, const Int& H,
                                             int n1, const SolveCaps& caps) {
  if (n1 < 0) throw ParamError("n1 must be >= 0");
  if (K < 0 || H < 0) throw ParamError("K and H must be >= 0");
  if (n1 > static_cast<int>(items.size())) return std::nullopt;
  S1Solver solver(items, H, caps);
  return solver.read(K, H, n1);
}

std::optional<S1LpPick> solve_subproblem_s1_lp(const std::vector<S1Item>& items,
                                               const Int& H, int n1) {
  if (n1 < 0) throw ParamError("n1 must be >= 0");
  if (n1 > static_cast<int>(items.size())) return std::nullopt;
  BoxLpProblem lp;
  lp.cardinality = n1;
  lp.weight_bound = Rat(H);
  for (const S1Item& it : items) {
    lp.objective.push_back(it.value);
    lp.weight.push_back(Rat(it.weight));
  }
  auto sol = solve_box_lp(lp);
  if (!sol) return std::nullopt;
  S1LpPick pick;
  pick.assignment = sol->x;
  pick.objective = sol->objective;
  pick.fractional = sol->fractional_count();
  std::vector<int> ones;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (sol->x[i] == 1) ones.push_back(items[i].id);
  pick.chosen = ItemSet::of(std::move(ones));
  return pick;
}

Rat relaxed_prefix_bound(const Instance& inst, const Rat& threshold) {
  Rat max_u = 0;
  for (const Item& it : inst.items()) max_u = std::max(max_u, it.upper());
  return threshold + 2 * max_u;
}

namespace {

struct Best {
  bool set = false;
  QuerySet q;

  bool would_improve(std::size_t size) const {
    return !set || size <= q.size();
  }
  void offer(const QuerySet& cand) {
    if (!set || cand.size() < q.size() ||
        (cand.size() == q.size() && cand < q)) {
      q = cand;
      set = true;
    }
  }
  void merge(const Best& other) {
    if (other.set) offer(other.q);
  }
};

// Every item fits: the prefix is the whole instance for every Q, so the
// task reduces to closing the gap U_I - bound with the fewest queries,
// picking the largest U_i - p_i gains. Lexicographically smallest among the
// minimum-cardinality solutions.
QuerySet solve_all_fit(const Instance& inst, const Rat& bound) {
  struct Gain {
    int id;
    Rat gain;
  };
  std::vector<Gain> gains;
  Rat total_upper = 0;
  for (const Item& it : inst.items()) {
    total_upper += it.upper();
    if (!it.trivial()) gains.push_back({it.id, it.upper() - it.profit});
  }
  Rat need = total_upper - bound;
  if (need <= 0) return {};

  auto by_gain = [](const Gain& a, const Gain& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.id < b.id;
  };
  std::vector<Gain> sorted = gains;
  std::sort(sorted.begin(), sorted.end(), by_gain);
  Rat acc = 0;
  std::size_t k = 0;
  while (k < sorted.size() && acc < need) acc += sorted[k++].gain;
  if (acc < need)
    throw ParamError("no feasible query set; threshold below the optimum?");

  // top-t gain sum among ids strictly greater than `after`
  auto top_sum = [&](int after, std::size_t t) {
    std::vector<Rat> g;
    for (const Gain& e : gains)
      if (e.id > after) g.push_back(e.gain);
    std::sort(g.begin(), g.end(), std::greater<Rat>());
    Rat s = 0;
    for (std::size_t i = 0; i < t && i < g.size(); ++i) s += g[i];
    return s;
  };

  std::vector<int> chosen;
  std::size_t slots = k;
  Rat remaining = need;
  for (const Gain& e : gains) {  // ids ascending
    if (slots == 0) break;
    if (e.gain + top_sum(e.id, slots - 1) >= remaining) {
      chosen.push_back(e.id);
      remaining -= e.gain;
      --slots;
      if (remaining <= 0 && slots == 0) break;
    }
  }
  return QuerySet::of(std::move(chosen));
}

struct LoopShared {
  const Instance& inst;
  Rat bound;
  bool relaxed;  // LP mode
  const PrefixOptions& opts;
};

void run_context(const LoopShared& sh, const GuessContext& ctx, Best& best,
                 PrefixStats& stats) {
  const Instance& inst = sh.inst;
  QuerySet q1 = ctx.A;
  if (ctx.i1_queried) q1 = q1.with(ctx.i1);
  if (ctx.i2_queried) q1 = q1.with(ctx.i2);

  std::vector<S1Item> s1items;
  for (int id : ctx.S1)
    s1items.push_back({id, inst.item(id).weight, inst.item(id).upper()});

  struct Gain {
    int id;
    Rat gain;
  };
  std::vector<Gain> s2gains;
  for (int id : ctx.S2) {
    const Item& it = inst.item(id);
    if (!it.trivial()) s2gains.push_back({id, it.upper() - it.profit});
  }
  std::sort(s2gains.begin(), s2gains.end(), [](const Gain& a, const Gain& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.id < b.id;
  });

  auto try_candidate = [&](const QuerySet& base, std::size_t n2) {
    QuerySet cand = base;
    for (std::size_t i = 0; i < n2; ++i) cand = cand.with(s2gains[i].id);
    if (!best.would_improve(cand.size())) return;
    ++stats.candidates;
    if (prefix_upper_after(inst, cand) <= sh.bound) best.offer(cand);
  };

  // n1 = 0 candidates (no S1 selection).
  for (std::size_t n2 = 0; n2 <= s2gains.size(); ++n2) {
    if (!best.would_improve(q1.size() + n2)) break;
    try_candidate(q1, n2);
  }

  if (ctx.S1.empty()) return;
  if (!best.would_improve(q1.size() + 1)) return;

  if (!sh.relaxed) {
    S1Solver solver(s1items, ctx.H, sh.opts.caps);
    ++stats.dp_solves;
    for (int n1 = 1; n1 <= solver.selectable(); ++n1) {
      if (!best.would_improve(q1.size() + static_cast<std::size_t>(n1)))
        break;
      auto pick = solver.read(ctx.K, ctx.H, n1);
      if (!pick) continue;
      QuerySet base = q1.unite(pick->chosen);
      for (std::size_t n2 = 0; n2 <= s2gains.size(); ++n2) {
        if (!best.would_improve(base.size() + n2)) break;
        try_candidate(base, n2);
      }
    }
  } else {
    for (int n1 = 1; n1 <= static_cast<int>(s1items.size()); ++n1) {
      if (!best.would_improve(q1.size() + static_cast<std::size_t>(n1)))
        break;
      auto pick = solve_subproblem_s1_lp(s1items, ctx.H, n1);
      ++stats.lp_solves;
      if (!pick) continue;
      stats.max_lp_fractional =
          std::max(stats.max_lp_fractional, pick->fractional);
      QuerySet base = q1.unite(pick->chosen);
      for (std::size_t n2 = 0; n2 <= s2gains.size(); ++n2) {
        if (!best.would_improve(base.size() + n2)) break;
        try_candidate(base, n2);
      }
    }
  }
}

QuerySet solve_prefix_core(const PrefixProblem& problem, bool relaxed,
                           const PrefixOptions& opts) {
  const Instance& inst = problem.instance;
  PrefixStats local_stats;
  PrefixStats& stats = opts.stats ? *opts.stats : local_stats;

  // Precondition: threshold >= p*, verified when an exact engine applies.
  if (auto opt = solve_knapsack_auto(inst, plain_profits(inst), std::nullopt,
                                     opts.caps)) {
    if (problem.threshold < opt->value)
      throw ParamError("prefix threshold " +
                       format_rational(problem.threshold) +
                       " is below the optimal profit " +
                       format_rational(opt->value));
  }

  const Rat bound = relaxed ? relaxed_prefix_bound(inst, problem.threshold)
                            : problem.threshold;
  if (inst.n() == 0) return {};
  if (prefix_upper_after(inst, {}) <= bound) return {};

  Best best;
  QuerySet all_nontrivial = inst.nontrivial_ids();
  if (prefix_upper_after(inst, all_nontrivial) > bound)
    throw ParamError("no feasible query set; threshold below the optimum?");
  best.offer(all_nontrivial);

  if (inst.total_weight() <= inst.capacity()) {
    best.offer(solve_all_fit(inst, bound));
    return best.q;
  }

  std::vector<GuessContext> contexts;
  for (int i1 = 1; i1 <= inst.n(); ++i1)
    for (int f1 = 0; f1 < 2; ++f1)
      for (int i2 = 1; i2 <= inst.n(); ++i2)
        for (int f2 = 0; f2 < 2; ++f2) {
          ++stats.guesses;
          auto ctx = make_guess_context(inst, i1, f1 == 1, i2, f2 == 1);
          if (!ctx) {
            ++stats.pruned;
            continue;
          }
          contexts.push_back(std::move(*ctx));
        }

  // Cheap pass: candidates that need no S1 selection, to shrink `best`
  // before the expensive pass.
  {
    LoopShared sh{inst, bound, relaxed, opts};
    for (const GuessContext& ctx : contexts) {
      QuerySet q1 = ctx.A;
      if (ctx.i1_queried) q1 = q1.with(ctx.i1);
      if (ctx.i2_queried) q1 = q1.with(ctx.i2);
      if (!best.would_improve(q1.size())) continue;
      ++stats.candidates;
      if (prefix_upper_after(inst, q1) <= bound) best.offer(q1);
    }
  }

  LoopShared sh{inst, bound, relaxed, opts};
  const int workers = std::max(1, opts.workers);
  if (workers == 1 || contexts.size() < 2) {
    for (const GuessContext& ctx : contexts) run_context(sh, ctx, best, stats);
  } else {
    std::vector<Best> bests(static_cast<std::size_t>(workers), best);
    std::vector<PrefixStats> tstats(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < contexts.size();
             i += static_cast<std::size_t>(workers))
          run_context(sh, contexts[i], bests[static_cast<std::size_t>(t)],
                      tstats[static_cast<std::size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < workers; ++t) {
      best.merge(bests[static_cast<std::size_t>(t)]);
      stats.dp_solves += tstats[static_cast<std::size_t>(t)].dp_solves;
      stats.lp_solves += tstats[static_cast<std::size_t>(t)].lp_solves;
      stats.candidates += tstats[static_cast<std::size_t>(t)].candidates;
      stats.max_lp_fractional =
          std::max(stats.max_lp_fractional,
                   tstats[static_cast<std::size_t>(t)].max_lp_fractional);
    }
  }
  return best.q;
}

}  // namespace

QuerySet solve_prefix_optimal(const PrefixProblem& problem,
                              const PrefixOptions& opts) {
  return solve_prefix_core(problem, false, opts);
}

QuerySet solve_prefix_lp(const PrefixProblem& problem,
                         const PrefixOptions& opts) {
  return solve_prefix_core(problem, true, opts);
}

}  // namespace knapq
