#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "knapq/numbers.hpp"

namespace knapq {

/// Uncertainty interval of an item profit: either the open interval
/// (lower, upper) or the trivial singleton {lower} (lower == upper).
struct Interval {
  Rat lower;
  Rat upper;
  bool trivial = true;

  static Interval open(Rat lo, Rat hi);
  static Interval singleton(Rat value);
};

/// One knapsack item. `profit` is the precise (hidden) profit; it must lie
/// strictly inside a non-trivial interval and equal the endpoints of a
/// trivial one.
struct Item {
  int id = 0;  // 1-based, contiguous within an Instance
  Int weight;
  Rat profit;
  Interval interval;

  bool trivial() const { return interval.trivial; }
  Rat upper() const { return interval.upper; }
  Rat lower() const { return interval.lower; }
};

/// Sorted set of item ids. Value type shared by query sets and packings.
class ItemSet {
 public:
  ItemSet() = default;
  ItemSet(std::initializer_list<int> ids);
  static ItemSet of(std::vector<int> ids);  // sorts and dedups

  bool contains(int id) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  ItemSet with(int id) const;
  ItemSet unite(const ItemSet& other) const;
  ItemSet minus(const ItemSet& other) const;

  const std::vector<int>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool operator==(const ItemSet&) const = default;
  // Lexicographic on the sorted id sequence (shorter prefix first).
  auto operator<=>(const ItemSet& other) const {
    return ids_ <=> other.ids_;
  }

 private:
  std::vector<int> ids_;
};

using QuerySet = ItemSet;
using Packing = ItemSet;

/// Immutable knapsack instance with uncertainty intervals.
class Instance {
 public:
  Instance() = default;
  // Validates all invariants (ids 1..n, weights in [1, capacity], profits
  // inside intervals). Throws ParseError on violation.
  Instance(std::vector<Item> items, Int capacity);

  int n() const { return static_cast<int>(items_.size()); }
  const Int& capacity() const { return capacity_; }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(int id) const;

  bool trivial(int id) const { return item(id).trivial(); }
  ItemSet trivial_ids() const;
  ItemSet nontrivial_ids() const;
  int nontrivial_count() const;
  const Int& total_weight() const { return total_weight_; }

  /// Copy with the intervals of `queried` collapsed to {p_i}.
  Instance with_queried(const ItemSet& queried) const;

 private:
  std::vector<Item> items_;
  Int capacity_;
  Int total_weight_;
};

// -- evaluation --------------------------------------------------------

Rat profit(const Instance& inst, const ItemSet& set);
Int weight(const Instance& inst, const ItemSet& set);
bool is_packing(const Instance& inst, const ItemSet& set);

/// U_i(Q): p_i if i was queried, U_i otherwise.
Rat item_upper_after(const Instance& inst, int id, const ItemSet& queried);
/// U_P = sum of raw upper limits over the set.
Rat upper_limit(const Instance& inst, const ItemSet& set);
/// U_P(Q) = sum of U_i(Q) over the set.
Rat upper_limit_after(const Instance& inst, const ItemSet& set,
                      const ItemSet& queried);

// -- file format --------------------------------------------------------

struct InstanceFile {
  Instance instance;
  std::optional<Rat> threshold;  // present for prefix-problem files
};

InstanceFile parse_instance_json(const std::string& text);
InstanceFile load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& inst,
                             const std::optional<Rat>& threshold = {});
void save_instance_file(const std::string& path, const Instance& inst,
                        const std::optional<Rat>& threshold = {});

}  // namespace knapq
