#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupmms/instance.hpp"

namespace groupmms {

// (m, s, t)-covering design: s-sized blocks over [m] such that every
// t-subset lies inside some block.
struct CoveringDesign {
  int m = 0;
  int s = 0;
  int t = 0;
  std::vector<Bundle> blocks;  // each sorted ascending
};

inline constexpr std::int64_t kDefaultCoverBudget = 10'000'000;

// True iff every t-subset is covered. TOO_LARGE when C(m,t) exceeds budget.
bool verify_design(const CoveringDesign& design, std::int64_t budget = kDefaultCoverBudget);

// All C(m,s) blocks in lexicographic order.
CoveringDesign trivial_design(int m, int s, std::int64_t budget = kDefaultCoverBudget);

// Repeatedly adds the block covering the most uncovered t-subsets
// (ties: lexicographically smallest block). The block count respects the
// C(m,t)/C(s,t) * (1 + ln C(s,t)) greedy bound. Candidate scoring runs the
// OpenMP kernel in the unsuffixed entry; both are deterministic.
CoveringDesign greedy_design(int m, int s, int t, std::int64_t budget = kDefaultCoverBudget);
CoveringDesign greedy_design_serial(int m, int s, int t,
                                    std::int64_t budget = kDefaultCoverBudget);

// Minimum-cardinality design by iterative deepening; m <= 7 only.
CoveringDesign min_design_exhaustive(int m, int s, int t);

double erdos_spencer_bound(int m, int s, int t);

// Saturating at UINT64_MAX.
std::uint64_t binomial_u64(int n, int k);

std::string serialize_design(const CoveringDesign& design);
CoveringDesign deserialize_design(const std::string& text);

}  // namespace groupmms
