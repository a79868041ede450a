#pragma once

// Test-side helpers and independent oracles. These deliberately use
// different enumeration strategies than the library (bitmask scans instead
// of DFS) so that agreement is meaningful.

#include <cstdint>
#include <optional>
#include <vector>

#include <knapq/engines.hpp>
#include <knapq/instance.hpp>
#include <knapq/prefix.hpp>

namespace testutil {

using knapq::Instance;
using knapq::Int;
using knapq::Interval;
using knapq::Item;
using knapq::ItemSet;
using knapq::Rat;

struct ItemSpec {
  int weight;
  const char* profit;
  const char* lower = nullptr;  // null -> trivial
  const char* upper = nullptr;
};

inline Instance make_instance(std::vector<ItemSpec> specs, long long capacity) {
  std::vector<Item> items;
  int id = 0;
  for (const ItemSpec& s : specs) {
    Item it;
    it.id = ++id;
    it.weight = Int(s.weight);
    it.profit = knapq::parse_rational(s.profit);
    if (s.lower == nullptr)
      it.interval = Interval::singleton(it.profit);
    else
      it.interval = Interval::open(knapq::parse_rational(s.lower),
                                   knapq::parse_rational(s.upper));
    items.push_back(std::move(it));
  }
  return Instance(std::move(items), Int(capacity));
}

inline ItemSet mask_to_set(std::uint32_t mask) {
  std::vector<int> ids;
  for (int i = 0; mask >> i; ++i)
    if ((mask >> i) & 1u) ids.push_back(i + 1);
  return ItemSet::of(std::move(ids));
}

/// Max profit over all packings by plain bitmask scan.
inline Rat scan_optimum(const Instance& inst,
                        const std::vector<Rat>& profits) {
  Rat best = 0;
  for (std::uint32_t mask = 0; mask < (1u << inst.n()); ++mask) {
    Int w = 0;
    Rat p = 0;
    for (int i = 0; i < inst.n(); ++i)
      if ((mask >> i) & 1u) {
        w += inst.item(i + 1).weight;
        p += profits[static_cast<std::size_t>(i)];
      }
    if (w <= inst.capacity() && p > best) best = p;
  }
  return best;
}

/// All packings as masks.
inline std::vector<std::uint32_t> scan_packings(const Instance& inst) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << inst.n()); ++mask) {
    Int w = 0;
    for (int i = 0; i < inst.n(); ++i)
      if ((mask >> i) & 1u) w += inst.item(i + 1).weight;
    if (w <= inst.capacity()) out.push_back(mask);
  }
  return out;
}

/// Feasibility per the covering-constraint view: for every packing P,
/// sum_{i in P and Q} (U_i - p_i) >= U_P - p*.
inline bool feasible_by_constraints(const Instance& inst, const ItemSet& q) {
  Rat p_star = scan_optimum(inst, knapq::plain_profits(inst));
  for (std::uint32_t mask : scan_packings(inst)) {
    Rat lhs = 0, upper = 0;
    for (int i = 0; i < inst.n(); ++i)
      if ((mask >> i) & 1u) {
        const Item& it = inst.item(i + 1);
        upper += it.upper();
        if (q.contains(i + 1)) lhs += it.upper() - it.profit;
      }
    if (lhs < upper - p_star) return false;
  }
  return true;
}

/// Second, independent minimum-feasible-set enumerator: scans bitmasks in
/// ascending numeric order (a different order than the library's
/// cardinality-lexicographic search) and keeps the best by
/// (cardinality, lexicographic ids).
template <typename Feasible>
inline ItemSet scan_min_feasible(const Instance& inst, Feasible&& feasible) {
  std::optional<ItemSet> best;
  const ItemSet nontrivial = inst.nontrivial_ids();
  std::vector<int> pool(nontrivial.ids());
  const std::uint32_t total = 1u << pool.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((mask >> i) & 1u) ids.push_back(pool[i]);
    ItemSet q = ItemSet::of(std::move(ids));
    if (best && (q.size() > best->size() ||
                 (q.size() == best->size() && !(q < *best))))
      continue;
    if (feasible(q)) best = q;
  }
  return *best;  // querying everything is always feasible
}

}  // namespace testutil
