#include "knapq/numbers.hpp"

#include <limits>

#include "knapq/errors.hpp"

namespace knapq {

namespace {

bool is_decimal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_decimal(text))
      throw ParseError("not a rational: '" + std::string(text) + "'");
    Int whole{std::string(text)};
    return Rat(whole);
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!is_decimal(num) || !is_decimal(den))
    throw ParseError("not a rational: '" + std::string(text) + "'");
  Int n{std::string(num)};
  Int d{std::string(den)};
  if (d < 1)
    throw ParseError("rational denominator must be >= 1 in '" +
                     std::string(text) + "'");
  return Rat(n, d);
}

std::string format_rational(const Rat& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Int parse_decimal(std::string_view text) {
  if (!is_decimal(text))
    throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  return Int(std::string(text));
}

int decimal_digits(const Int& value) {
  Int v = value < 0 ? Int(-value) : value;
  if (v == 0) return 1;
  int digits = 0;
  while (v > 0) {
    ++digits;
    v /= 10;
  }
  return digits;
}

Int isqrt_floor(const Int& value) {
  if (value < 0) throw ParamError("isqrt_floor of negative value");
  return boost::multiprecision::sqrt(value);
}

ScaledInts scale_to_integers(const std::vector<Rat>& values) {
  ScaledInts out;
  out.denominator = 1;
  for (const Rat& v : values)
    out.denominator = boost::multiprecision::lcm(out.denominator,
                                                 denominator(v));
  out.values.reserve(values.size());
  Int abs_sum = 0;
  for (const Rat& v : values) {
    Int scaled = numerator(v) * (out.denominator / denominator(v));
    abs_sum += boost::multiprecision::abs(scaled);
    out.values.push_back(std::move(scaled));
  }
  // Headroom factor 4 so sums and single adds cannot overflow int64.
  out.fits_int64 = abs_sum <= Int(std::numeric_limits<std::int64_t>::max() / 4);
  if (out.fits_int64) {
    out.small.reserve(out.values.size());
    for (const Int& v : out.values)
      out.small.push_back(v.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace knapq
