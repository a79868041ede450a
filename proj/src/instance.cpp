#include "knapq/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "knapq/errors.hpp"

namespace knapq {

Interval Interval::open(Rat lo, Rat hi) {
  if (!(lo < hi))
    throw ParseError("open interval requires lower < upper, got (" +
                     format_rational(lo) + ", " + format_rational(hi) + ")");
  Interval iv;
  iv.lower = std::move(lo);
  iv.upper = std::move(hi);
  iv.trivial = false;
  return iv;
}

Interval Interval::singleton(Rat value) {
  Interval iv;
  iv.lower = value;
  iv.upper = std::move(value);
  iv.trivial = true;
  return iv;
}

ItemSet::ItemSet(std::initializer_list<int> ids) : ids_(ids) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

ItemSet ItemSet::of(std::vector<int> ids) {
  ItemSet s;
  s.ids_ = std::move(ids);
  std::sort(s.ids_.begin(), s.ids_.end());
  s.ids_.erase(std::unique(s.ids_.begin(), s.ids_.end()), s.ids_.end());
  return s;
}

bool ItemSet::contains(int id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

ItemSet ItemSet::with(int id) const {
  if (contains(id)) return *this;
  ItemSet s = *this;
  s.ids_.insert(std::lower_bound(s.ids_.begin(), s.ids_.end(), id), id);
  return s;
}

ItemSet ItemSet::unite(const ItemSet& other) const {
  ItemSet s;
  s.ids_.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(s.ids_));
  return s;
}

ItemSet ItemSet::minus(const ItemSet& other) const {
  ItemSet s;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(s.ids_));
  return s;
}

Instance::Instance(std::vector<Item> items, Int capacity)
    : items_(std::move(items)), capacity_(std::move(capacity)) {
  if (capacity_ < 1) throw ParseError("capacity must be >= 1");
  std::sort(items_.begin(), items_.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  total_weight_ = 0;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    std::string where = "items[" + std::to_string(i) + "] (id " +
                        std::to_string(it.id) + ")";
    if (it.id != static_cast<int>(i) + 1)
      throw ParseError("item ids must be 1..n without gaps; " + where);
    if (it.weight < 1) throw ParseError(where + ": weight must be >= 1");
    if (it.weight > capacity_)
      throw ParseError(where + ": weight exceeds capacity");
    if (it.profit < 0) throw ParseError(where + ": profit must be >= 0");
    if (it.interval.trivial) {
      if (it.interval.lower != it.interval.upper ||
          it.profit != it.interval.lower)
        throw ParseError(where + ": trivial interval must equal the profit");
    } else {
      if (!(it.interval.lower < it.profit && it.profit < it.interval.upper))
        throw ParseError(where +
                         ": profit must lie strictly inside the open interval");
    }
    total_weight_ += it.weight;
  }
}

const Item& Instance::item(int id) const {
  if (id < 1 || id > n())
    throw ParamError("unknown item id " + std::to_string(id));
  return items_[static_cast<std::size_t>(id) - 1];
}

ItemSet Instance::trivial_ids() const {
  std::vector<int> ids;
  for (const Item& it : items_)
    if (it.trivial()) ids.push_back(it.id);
  return ItemSet::of(std::move(ids));
}

ItemSet Instance::nontrivial_ids() const {
  std::vector<int> ids;
  for (const Item& it : items_)
    if (!it.trivial()) ids.push_back(it.id);
  return ItemSet::of(std::move(ids));
}

int Instance::nontrivial_count() const {
  int c = 0;
  for (const Item& it : items_)
    if (!it.trivial()) ++c;
  return c;
}

Instance Instance::with_queried(const ItemSet& queried) const {
  std::vector<Item> items = items_;
  for (int id : queried) {
    Item& it = items[static_cast<std::size_t>(item(id).id) - 1];
    it.interval = Interval::singleton(it.profit);
  }
  return Instance(std::move(items), capacity_);
}

Rat profit(const Instance& inst, const ItemSet& set) {
  Rat sum = 0;
  for (int id : set) sum += inst.item(id).profit;
  return sum;
}

Int weight(const Instance& inst, const ItemSet& set) {
  Int sum = 0;
  for (int id : set) sum += inst.item(id).weight;
  return sum;
}

bool is_packing(const Instance& inst, const ItemSet& set) {
  return weight(inst, set) <= inst.capacity();
}

Rat item_upper_after(const Instance& inst, int id, const ItemSet& queried) {
  const Item& it = inst.item(id);
  return queried.contains(id) ? it.profit : it.upper();
}

Rat upper_limit(const Instance& inst, const ItemSet& set) {
  Rat sum = 0;
  for (int id : set) sum += inst.item(id).upper();
  return sum;
}

Rat upper_limit_after(const Instance& inst, const ItemSet& set,
                      const ItemSet& queried) {
  Rat sum = 0;
  for (int id : set) sum += item_upper_after(inst, id, queried);
  return sum;
}

namespace {

using nlohmann::ordered_json;

std::string field_str(const ordered_json& obj, const char* key,
                      const std::string& where) {
  if (!obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  if (!obj[key].is_string())
    throw ParseError(where + "." + key + ": expected a string");
  return obj[key].get<std::string>();
}

}  // namespace

InstanceFile parse_instance_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance file must be an object");
  Int capacity = parse_decimal(field_str(doc, "capacity", "instance"));
  if (!doc.contains("items") || !doc["items"].is_array())
    throw ParseError("instance: missing 'items' array");

  std::vector<Item> items;
  std::size_t idx = 0;
  for (const auto& j : doc["items"]) {
    std::string where = "items[" + std::to_string(idx++) + "]";
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    Item it;
    if (!j.contains("id") || !j["id"].is_number_integer())
      throw ParseError(where + ": missing integer field 'id'");
    it.id = j["id"].get<int>();
    it.weight = parse_decimal(field_str(j, "weight", where));
    it.profit = parse_rational(field_str(j, "profit", where));
    Rat lower = parse_rational(field_str(j, "lower", where));
    Rat upper = parse_rational(field_str(j, "upper", where));
    if (!j.contains("trivial") || !j["trivial"].is_boolean())
      throw ParseError(where + ": missing boolean field 'trivial'");
    if (j["trivial"].get<bool>()) {
      if (lower != upper)
        throw ParseError(where + ": trivial interval with lower != upper");
      it.interval = Interval::singleton(lower);
    } else {
      if (!(lower < upper))
        throw ParseError(where + ".lower: must be < upper for open intervals");
      it.interval = Interval::open(lower, upper);
    }
    items.push_back(std::move(it));
  }

  InstanceFile out;
  out.instance = Instance(std::move(items), std::move(capacity));
  if (doc.contains("threshold"))
    out.threshold = parse_rational(field_str(doc, "threshold", "instance"));
  return out;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str());
}

std::string instance_to_json(const Instance& inst,
                             const std::optional<Rat>& threshold) {
  ordered_json doc;
  doc["capacity"] = inst.capacity().str();
  if (threshold) doc["threshold"] = format_rational(*threshold);
  doc["items"] = ordered_json::array();
  for (const Item& it : inst.items()) {
    ordered_json j;
    j["id"] = it.id;
    j["weight"] = it.weight.str();
    j["lower"] = format_rational(it.lower());
    j["upper"] = format_rational(it.upper());
    j["profit"] = format_rational(it.profit);
    j["trivial"] = it.trivial();
    doc["items"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void save_instance_file(const std::string& path, const Instance& inst,
                        const std::optional<Rat>& threshold) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file: " + path);
  out << instance_to_json(inst, threshold);
}

}  // namespace knapq
