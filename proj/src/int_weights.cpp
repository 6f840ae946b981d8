#include "int_weights.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "groupmms/errors.hpp"

namespace groupmms::detail {

using boost::multiprecision::gcd;

BigInt lcm_denominators(const UtilityVector& u, const Bundle& items) {
  BigInt l(1);
  for (int item : items) {
    const BigInt& d = u.at(item).denominator();
    l = l / gcd(l, d) * d;
  }
  return l;
}

ScaledVector scale_vector(const UtilityVector& u, const Bundle& items,
                          const Rational& threshold) {
  ScaledVector out;
  out.lcm = lcm_denominators(u, items);
  out.w.reserve(items.size());
  out.total = 0;
  for (int item : items) {
    BigInt wi = u.at(item).numerator() * (out.lcm / u.at(item).denominator());
    out.total += wi;
    out.w.push_back(std::move(wi));
  }
  out.threshold = ceil_rational(threshold * Rational(out.lcm));
  return out;
}

std::optional<ScaledVector64> narrow(const ScaledVector& v) {
  const BigInt max64 = (BigInt(1) << 64) - 2;
  if (v.total > max64) return std::nullopt;
  if (v.threshold < 0) {
    ScaledVector64 out;
    out.threshold = 0;
    out.total = v.total.convert_to<std::uint64_t>();
    for (const BigInt& wi : v.w) out.w.push_back(wi.convert_to<std::uint64_t>());
    return out;
  }
  ScaledVector64 out;
  out.total = v.total.convert_to<std::uint64_t>();
  out.threshold = v.threshold > v.total ? out.total + 1 : v.threshold.convert_to<std::uint64_t>();
  out.w.reserve(v.w.size());
  for (const BigInt& wi : v.w) {
    if (wi < 0) return std::nullopt;
    out.w.push_back(wi.convert_to<std::uint64_t>());
  }
  return out;
}

}  // namespace groupmms::detail
