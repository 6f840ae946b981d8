#pragma once

#include <optional>
#include <vector>

#include "groupmms/instance.hpp"

namespace groupmms {

// Exhaustive solvers refuse larger inputs so callers cannot accidentally
// launch unbounded searches.
inline constexpr int kDefaultExactLimit = 16;
inline constexpr int kSubsetEnumLimit = 20;

struct MmsResult {
  Rational value;
  std::vector<Bundle> witness;  // exactly p bundles; empty bundles allowed
  bool exact = false;
};

// Exact 1-out-of-p maximin share of `u` restricted to `items`: the best
// min-bundle value over all partitions into at most p parts (missing parts
// count as empty, value 0). Depth-first search over labeled bundles with
// equal-load symmetry skipping and an LPT warm start; value and witness are
// deterministic. TOO_LARGE above `limit` items.
MmsResult exact_mms(const UtilityVector& u, int p, const Bundle& items,
                    int limit = kDefaultExactLimit);

// Longest-processing-time greedy: items by descending value into the
// currently lightest of p bundles (ties: lowest index). The returned value
// lies in [3/4 * MMS^p, MMS^p].
MmsResult lpt_mms(const UtilityVector& u, int p, const Bundle& items);

struct NormalizedAgent {
  Rational scale;        // 3/(4t)
  UtilityVector capped;  // min(scale * u_i, 1), entries in [0,1]
};

// Rescales so a threshold of t maps to 3/4 and clips single items at 1.
// NONPOSITIVE_THRESHOLD if t <= 0.
NormalizedAgent normalize(const UtilityVector& u, const Rational& threshold);

// If the capped utility of `items` is at least 2p, greedily packs p bundles
// each worth >= 1 (leftovers join the last bundle); otherwise nullopt.
// CAP_VIOLATION if an entry exceeds 1.
std::optional<std::vector<Bundle>> sufficiency_witness(const NormalizedAgent& agent, int p,
                                                       const Bundle& items);

// Exact fraction of the 2^m subsets T with u(T) >= MMS^p; always strictly
// above 1 - 2^(1-p). Enumeration in Gray-code order; TOO_LARGE above
// kSubsetEnumLimit items. The unsuffixed entry runs the OpenMP kernel.
Rational subset_success_fraction(const UtilityVector& u, int p);
Rational subset_success_fraction_serial(const UtilityVector& u, int p);

}  // namespace groupmms
