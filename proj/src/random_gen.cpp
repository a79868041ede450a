#include "knapq/random_gen.hpp"

#include <random>

#include "knapq/errors.hpp"

namespace knapq {

namespace {

// Bounded draws via modulo keep the byte stream identical across standard
// library implementations (distributions are not portable).
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

}  // namespace

Instance random_instance(const RandomInstanceParams& p) {
  if (p.n < 0 || p.max_weight < 1 || p.denominator < 1 ||
      p.max_upper_numerator < 3)
    throw ParamError("random_instance: bad parameters");
  std::mt19937_64 rng(p.seed);
  const int den = p.denominator;

  std::vector<Item> items;
  Int total_weight = 0;
  Int heaviest = 1;
  for (int id = 1; id <= p.n; ++id) {
    Item it;
    it.id = id;
    it.weight = Int(1 + draw(rng, static_cast<std::uint64_t>(p.max_weight)));
    total_weight += it.weight;
    if (it.weight > heaviest) heaviest = it.weight;
    const bool trivial =
        static_cast<int>(draw(rng, 100)) < p.trivial_percent;
    if (trivial) {
      int num = static_cast<int>(
          draw(rng, static_cast<std::uint64_t>(p.max_upper_numerator) + 1));
      it.profit = Rat(num, den);
      it.interval = Interval::singleton(it.profit);
    } else {
      // 0 <= lo < profit < up, all on the /den grid
      int up = 2 + static_cast<int>(
                       draw(rng, static_cast<std::uint64_t>(
                                     p.max_upper_numerator) - 1));
      int pr = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(up) - 1));
      int lo = static_cast<int>(draw(rng, static_cast<std::uint64_t>(pr)));
      it.profit = Rat(pr, den);
      it.interval = Interval::open(Rat(lo, den), Rat(up, den));
    }
    items.push_back(std::move(it));
  }
  Int capacity;
  if (p.n == 0) {
    capacity = 1;
  } else {
    // anywhere between the heaviest item and the total weight
    Int span = total_weight - heaviest + 1;
    Int offset = Int(draw(rng, span.convert_to<std::uint64_t>()));
    capacity = heaviest + offset;
  }
  return Instance(std::move(items), std::move(capacity));
}

}  // namespace knapq
