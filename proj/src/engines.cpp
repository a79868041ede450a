#include "knapq/engines.hpp"

#include <algorithm>
#include <cstdint>

#include "knapq/errors.hpp"

namespace knapq {

ProfitVector plain_profits(const Instance& inst) {
  ProfitVector p;
  p.reserve(inst.items().size());
  for (const Item& it : inst.items()) p.push_back(it.profit);
  return p;
}

ProfitVector upper_after_profits(const Instance& inst,
                                 const ItemSet& queried) {
  ProfitVector p;
  p.reserve(inst.items().size());
  for (const Item& it : inst.items())
    p.push_back(item_upper_after(inst, it.id, queried));
  return p;
}

namespace {

// Per-c slice of the DP result: best value and witness bits at full capacity
// among subsets with exactly c non-trivial members.
template <typename PT>
struct PerCount {
  bool reachable = false;
  PT value{};
  std::vector<std::uint64_t> picks;
};

// Weight-indexed table over (w, c). Items are processed in descending id
// order so that a tie between "take i" and "skip i" is resolved toward the
// lexicographically smaller id sequence: the take-candidate starts with i,
// which precedes everything already stored, so it wins unless the stored
// witness is the empty set.
template <typename PT>
std::vector<PerCount<PT>> dp_run(const Instance& inst,
                                 const std::vector<PT>& profits,
                                 const std::optional<ItemSet>& allowed,
                                 std::size_t cap_w) {
  const int n = inst.n();
  int n0 = inst.nontrivial_count();
  const std::size_t blocks = (static_cast<std::size_t>(n) + 63) / 64;
  const std::size_t cdim = static_cast<std::size_t>(n0) + 1;
  const std::size_t cells = (cap_w + 1) * cdim;

  std::vector<PT> value(cells, PT{});
  std::vector<std::uint8_t> reach(cells, 0);
  std::vector<std::uint64_t> picks(cells * std::max<std::size_t>(blocks, 1),
                                   0);
  auto at = [&](std::size_t w, std::size_t c) { return w * cdim + c; };

  for (std::size_t w = 0; w <= cap_w; ++w) reach[at(w, 0)] = 1;

  for (int id = n; id >= 1; --id) {
    if (allowed && !allowed->contains(id)) continue;
    const Item& it = inst.item(id);
    if (it.weight > Int(cap_w)) continue;
    const std::size_t wi = it.weight.template convert_to<std::size_t>();
    const PT& pi = profits[static_cast<std::size_t>(id) - 1];
    const std::size_t cshift = it.trivial() ? 0 : 1;
    const std::size_t bit_block = static_cast<std::size_t>(id - 1) / 64;
    const std::uint64_t bit_mask = 1ull << ((id - 1) % 64);

    for (std::size_t w = cap_w; w >= wi; --w) {
      for (std::size_t c = cshift; c < cdim; ++c) {
        const std::size_t src = at(w - wi, c - cshift);
        if (!reach[src]) continue;
        const std::size_t dst = at(w, c);
        PT cand = value[src] + pi;
        bool take;
        if (!reach[dst]) {
          take = true;
        } else if (cand != value[dst]) {
          take = cand > value[dst];
        } else {
          bool dst_empty = true;
          for (std::size_t b = 0; b < blocks; ++b)
            if (picks[dst * blocks + b]) {
              dst_empty = false;
              break;
            }
          take = !dst_empty;
        }
        if (take) {
          reach[dst] = 1;
          value[dst] = std::move(cand);
          for (std::size_t b = 0; b < blocks; ++b)
            picks[dst * blocks + b] = picks[src * blocks + b];
          picks[dst * blocks + bit_block] |= bit_mask;
        }
      }
    }
  }

  std::vector<PerCount<PT>> out(cdim);
  for (std::size_t c = 0; c < cdim; ++c) {
    const std::size_t cell = at(cap_w, c);
    if (!reach[cell]) continue;
    out[c].reachable = true;
    out[c].value = value[cell];
    out[c].picks.assign(picks.begin() + cell * blocks,
                        picks.begin() + (cell + 1) * blocks);
  }
  return out;
}

Packing picks_to_set(const std::vector<std::uint64_t>& bits) {
  std::vector<int> ids;
  for (std::size_t b = 0; b < bits.size(); ++b) {
    std::uint64_t v = bits[b];
    while (v) {
      int bit = __builtin_ctzll(v);
      ids.push_back(static_cast<int>(b * 64) + bit + 1);
      v &= v - 1;
    }
  }
  return Packing::of(std::move(ids));
}

struct DpAnswers {
  Int denominator;
  // exact non-trivial count -> best at full capacity
  std::vector<PerCount<Int>> big;
  std::vector<PerCount<std::int64_t>> small;
  bool use_small = false;

  std::size_t cdim() const { return use_small ? small.size() : big.size(); }
  bool reachable(std::size_t c) const {
    return use_small ? small[c].reachable : big[c].reachable;
  }
  Rat value(std::size_t c) const {
    return use_small ? Rat(Int(small[c].value), denominator)
                     : Rat(big[c].value, denominator);
  }
  const std::vector<std::uint64_t>& picks(std::size_t c) const {
    return use_small ? small[c].picks : big[c].picks;
  }
};

DpAnswers run_engine(const Instance& inst, const ProfitVector& profits,
                     const std::optional<ItemSet>& allowed,
                     const SolveCaps& caps) {
  if (profits.size() != static_cast<std::size_t>(inst.n()))
    throw ParamError("profit vector size does not match item count");
  for (const Rat& p : profits)
    if (p < 0) throw ParamError("profit vector entries must be >= 0");
  if (inst.capacity() > Int(caps.dp_capacity))
    throw CapacityError(
        "instance capacity " + inst.capacity().str() +
        " exceeds the DP capacity cap " + std::to_string(caps.dp_capacity) +
        "; use enumeration for small n or raise the cap");
  const std::size_t cap_w = inst.capacity().convert_to<std::size_t>();

  ScaledInts scaled = scale_to_integers(profits);
  DpAnswers ans;
  ans.denominator = scaled.denominator;
  ans.use_small = scaled.fits_int64;
  if (ans.use_small)
    ans.small = dp_run<std::int64_t>(inst, scaled.small, allowed, cap_w);
  else
    ans.big = dp_run<Int>(inst, scaled.values, allowed, cap_w);
  return ans;
}

// Best over exact counts 0..limit: maximum value, then fewest non-trivial.
KnapsackSolution read_off(const DpAnswers& ans, std::size_t limit) {
  KnapsackSolution best;
  bool have = false;
  for (std::size_t c = 0; c < ans.cdim() && c <= limit; ++c) {
    if (!ans.reachable(c)) continue;
    Rat v = ans.value(c);
    if (!have || v > best.value) {
      best.value = std::move(v);
      best.packing = picks_to_set(ans.picks(c));
      have = true;
    }
  }
  if (!have) {
    best.value = 0;
    best.packing = {};
  }
  return best;
}

}  // namespace

KnapsackSolution knapsack_opt(const Instance& inst,
                              const ProfitVector& profits,
                              const std::optional<ItemSet>& allowed,
                              const SolveCaps& caps) {
  DpAnswers ans = run_engine(inst, profits, allowed, caps);
  return read_off(ans, ans.cdim());
}

KnapsackSolution knapsack_opt_2d(const Instance& inst,
                                 const ProfitVector& profits,
                                 int max_nontrivial, const SolveCaps& caps) {
  if (max_nontrivial < 0 || max_nontrivial > inst.n())
    throw ParamError("non-trivial bound must be in [0, n]");
  DpAnswers ans = run_engine(inst, profits, std::nullopt, caps);
  return read_off(ans, static_cast<std::size_t>(max_nontrivial));
}

std::vector<KnapsackSolution> knapsack_opt_2d_all(const Instance& inst,
                                                  const ProfitVector& profits,
                                                  const SolveCaps& caps) {
  DpAnswers ans = run_engine(inst, profits, std::nullopt, caps);
  std::vector<KnapsackSolution> out;
  out.reserve(static_cast<std::size_t>(inst.n()) + 1);
  for (int l = 0; l <= inst.n(); ++l)
    out.push_back(read_off(ans, static_cast<std::size_t>(l)));
  return out;
}

KnapsackSolution max_upper_limit(const Instance& inst, const ItemSet& queried,
                                 const SolveCaps& caps) {
  return knapsack_opt(inst, upper_after_profits(inst, queried), std::nullopt,
                      caps);
}

std::optional<KnapsackSolution> solve_knapsack_auto(
    const Instance& inst, const ProfitVector& profits,
    const std::optional<ItemSet>& allowed, const SolveCaps& caps) {
  if (profits.size() != static_cast<std::size_t>(inst.n()))
    throw ParamError("profit vector size does not match item count");
  if (inst.capacity() <= Int(caps.dp_capacity))
    return knapsack_opt(inst, profits, allowed, caps);

  std::vector<int> candidates;
  for (const Item& it : inst.items())
    if (!allowed || allowed->contains(it.id)) candidates.push_back(it.id);
  if (static_cast<int>(candidates.size()) > caps.enumeration_items)
    return std::nullopt;

  // Enumerate subsets of the allowed items; keep the best under
  // (value desc, non-trivial count asc, id sequence lex asc). Values are
  // accumulated on a common integer denominator; rational adds would pay a
  // gcd per node.
  ScaledInts scaled = scale_to_integers(profits);
  Int best_value = 0;
  std::vector<int> best_ids;
  int best_nt = 0;
  std::vector<int> stack;
  Int weight = 0;
  Int value = 0;
  int nt = 0;
  auto consider = [&]() {
    if (value > best_value ||
        (value == best_value &&
         (nt < best_nt || (nt == best_nt && stack < best_ids)))) {
      best_value = value;
      best_ids = stack;
      best_nt = nt;
    }
  };
  auto rec = [&](auto&& self, std::size_t next) -> void {
    consider();
    for (std::size_t k = next; k < candidates.size(); ++k) {
      const Item& it = inst.item(candidates[k]);
      if (weight + it.weight > inst.capacity()) continue;
      weight += it.weight;
      value += scaled.values[static_cast<std::size_t>(it.id) - 1];
      nt += it.trivial() ? 0 : 1;
      stack.push_back(it.id);
      self(self, k + 1);
      stack.pop_back();
      nt -= it.trivial() ? 0 : 1;
      value -= scaled.values[static_cast<std::size_t>(it.id) - 1];
      weight -= it.weight;
    }
  };
  rec(rec, 0);
  KnapsackSolution best{Rat(best_value, scaled.denominator),
                        ItemSet::of(std::move(best_ids))};
  return best;
}

void for_each_packing(const Instance& inst,
                      const std::function<void(const std::vector<int>&)>& fn,
                      const SolveCaps& caps) {
  if (inst.n() > caps.enumeration_items)
    throw EnumerationError("packing enumeration refused: " +
                           std::to_string(inst.n()) + " items exceeds cap " +
                           std::to_string(caps.enumeration_items));
  std::vector<int> stack;
  Int weight = 0;
  auto rec = [&](auto&& self, int next) -> void {
    fn(stack);
    for (int id = next; id <= inst.n(); ++id) {
      const Int& wi = inst.item(id).weight;
      if (weight + wi > inst.capacity()) continue;
      weight += wi;
      stack.push_back(id);
      self(self, id + 1);
      stack.pop_back();
      weight -= wi;
    }
  };
  rec(rec, 1);
}

std::vector<Packing> enumerate_packings(const Instance& inst,
                                        const SolveCaps& caps) {
  std::vector<Packing> out;
  for_each_packing(
      inst, [&](const std::vector<int>& ids) { out.push_back(ItemSet::of(ids)); },
      caps);
  return out;
}

}  // namespace knapq
