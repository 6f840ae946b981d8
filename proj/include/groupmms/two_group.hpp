#pragma once

#include <cstdint>
#include <optional>

#include "groupmms/instance.hpp"
#include "groupmms/mms.hpp"

namespace groupmms {

struct TwoGroupBound {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  int p = 0;
};

// Minimal p with (1 - 2^(1-p))^n1 + (1 - 2^(1-p))^n2 >= 1, evaluated in
// exact rationals (the (1,1) case is exactly tight at p = 2, so floating
// point would misclassify boundaries). Guarded at n <= 10^6; the exact
// powers grow with n*p bits.
TwoGroupBound two_group_p(std::uint64_t n1, std::uint64_t n2);

// 1 + ceil(log2(n1 + n2)); always >= two_group_p.
int corollary_p(std::uint64_t n1, std::uint64_t n2);

// (1 - 2^(1-p))^n1 + (1 - 2^(1-p))^n2 - 1, the random-allocation success
// lower bound matched against exact_allocation_fraction.
Rational kleitman_bound(std::uint64_t n1, std::uint64_t n2, int p);

// Samples uniform allocations (independent fair draw per item, any g) and
// returns the first one in which every agent meets her exact MMS^p.
std::optional<Allocation> random_allocation_search(const Instance& inst, int p, int trials,
                                                   std::uint64_t seed,
                                                   int exact_limit = kDefaultExactLimit);

// Exact fraction of the 2^m two-group allocations that satisfy every agent.
// Gray-code enumeration; the unsuffixed entry runs the OpenMP kernel.
// Requires g = 2; TOO_LARGE above kSubsetEnumLimit items.
Rational exact_allocation_fraction(const Instance& inst, int p);
Rational exact_allocation_fraction_serial(const Instance& inst, int p);

}  // namespace groupmms
