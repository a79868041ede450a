#pragma once

#include <cstdint>

#include "knapq/instance.hpp"

namespace knapq {

/// Seeded, reproducible random instances. Profits and limits are drawn on a
/// fixed denominator grid so interval strictness is exact.
struct RandomInstanceParams {
  int n = 8;
  int max_weight = 15;
  int max_upper_numerator = 1200;  // upper limit <= max_upper_numerator/denom
  int denominator = 24;
  int trivial_percent = 35;
  std::uint64_t seed = 0;
};

Instance random_instance(const RandomInstanceParams& params);

}  // namespace knapq
