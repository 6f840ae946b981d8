#pragma once

#include <cstdint>
#include <optional>

#include "groupmms/instance.hpp"
#include "groupmms/mms.hpp"

namespace groupmms {

struct OracleBudget {
  std::int64_t max_assignments = 100'000'000;  // bound on g^m
  int exact_limit = kDefaultExactLimit;
};

// Ground truth by exhaustive search: a witness allocation giving every agent
// her exact MMS^p, or nullopt if none exists. Items are branched in
// descending max-agent-value order with per-agent reachability pruning;
// identical groups are canonicalized (first branched item goes to the
// lower-indexed twin). The witness is the lexicographically smallest
// feasible assignment in that item order, identical for the serial and
// OpenMP paths. TOO_LARGE when g^m or m exceeds the budget.
std::optional<Allocation> exists_mms_allocation(const Instance& inst, int p,
                                                const OracleBudget& budget = {});
std::optional<Allocation> exists_mms_allocation_serial(const Instance& inst, int p,
                                                       const OracleBudget& budget = {});

// Smallest p admitting an MMS^p allocation, scanned upward from p = g.
// Feasibility is monotone in p, so the first hit is the minimum.
int min_feasible_p(const Instance& inst, const OracleBudget& budget = {});

}  // namespace groupmms
