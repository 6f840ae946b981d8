#pragma once

// Rational utility vectors scaled to integers by the lcm of their
// denominators, so the enumeration kernels run on plain integer adds and
// compares while staying exact.

#include <cstdint>
#include <optional>
#include <vector>

#include "groupmms/instance.hpp"
#include "groupmms/rational.hpp"

namespace groupmms::detail {

struct ScaledVector {
  std::vector<BigInt> w;  // aligned with the item list it was built from
  BigInt lcm;
  BigInt total;
  BigInt threshold;  // sum/lcm >= rational threshold  iff  sum >= this
};

struct ScaledVector64 {
  std::vector<std::uint64_t> w;
  std::uint64_t total = 0;
  std::uint64_t threshold = 0;  // saturated to total+1 when unreachable
};

BigInt lcm_denominators(const UtilityVector& u, const Bundle& items);

ScaledVector scale_vector(const UtilityVector& u, const Bundle& items,
                          const Rational& threshold);

// u64 view when everything fits; the kernels fall back to BigInt otherwise.
std::optional<ScaledVector64> narrow(const ScaledVector& v);

}  // namespace groupmms::detail
