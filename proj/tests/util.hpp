#pragma once

// Shared helpers for the test suites. The naive_* functions are independent
// oracles: direct transcriptions of the definitions with no sorting, pruning
// or incremental tricks, so they share no code path with the library.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "groupmms/instance.hpp"
#include "groupmms/oracle.hpp"
#include "groupmms/rng.hpp"

namespace testutil {

using groupmms::Allocation;
using groupmms::BigInt;
using groupmms::Bundle;
using groupmms::Instance;
using groupmms::Rational;
using groupmms::UtilityVector;

inline UtilityVector vec(std::initializer_list<long long> values) {
  UtilityVector u;
  for (long long v : values) u.emplace_back(BigInt(v), BigInt(1));
  return u;
}

inline Rational rat(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// max over all p^k assignments of the minimum bundle value
inline Rational naive_mms(const UtilityVector& u, int p, const Bundle& items) {
  const int k = static_cast<int>(items.size());
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  Rational best(0);
  bool first = true;
  std::vector<int> assign(k, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < k; ++i) {
      assign[i] = static_cast<int>(rest % p);
      rest /= p;
    }
    Rational worst(0);
    bool worst_set = false;
    for (int b = 0; b < p; ++b) {
      Rational sum(0);
      for (int i = 0; i < k; ++i) {
        if (assign[i] == b) sum += u[items[i]];
      }
      if (!worst_set || sum < worst) {
        worst = sum;
        worst_set = true;
      }
    }
    if (first || worst > best) {
      best = worst;
      first = false;
    }
  }
  return best;
}

inline bool naive_is_mms_allocation(const Instance& inst, const Allocation& alloc, int p) {
  const Bundle items = groupmms::all_items(inst.m);
  for (int i = 0; i < inst.group_count(); ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      const Rational threshold = naive_mms(inst.groups[i][j], p, items);
      if (groupmms::utility(inst.groups[i][j], alloc.bundles[i]) < threshold) return false;
    }
  }
  return true;
}

inline bool naive_exists_mms_allocation(const Instance& inst, int p) {
  const int g = inst.group_count();
  std::uint64_t total = 1;
  for (int i = 0; i < inst.m; ++i) total *= g;
  for (std::uint64_t code = 0; code < total; ++code) {
    Allocation alloc;
    alloc.bundles.assign(g, Bundle{});
    std::uint64_t rest = code;
    for (int item = 0; item < inst.m; ++item) {
      alloc.bundles[rest % g].push_back(item);
      rest /= g;
    }
    if (naive_is_mms_allocation(inst, alloc, p)) return true;
  }
  return false;
}

inline int naive_min_feasible_p(const Instance& inst) {
  for (int p = inst.group_count();; ++p) {
    if (naive_exists_mms_allocation(inst, p)) return p;
  }
}

inline Rational naive_subset_fraction(const UtilityVector& u, int p) {
  const int m = static_cast<int>(u.size());
  const Rational threshold = naive_mms(u, p, groupmms::all_items(m));
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    Rational sum(0);
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1) sum += u[i];
    }
    if (sum >= threshold) ++count;
  }
  return Rational(BigInt(count), BigInt(1) << m);
}

inline Rational naive_allocation_fraction(const Instance& inst, int p) {
  const int m = inst.m;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    Allocation alloc;
    alloc.bundles.assign(2, Bundle{});
    for (int item = 0; item < m; ++item) {
      alloc.bundles[(mask >> item) & 1 ? 0 : 1].push_back(item);
    }
    if (naive_is_mms_allocation(inst, alloc, p)) ++count;
  }
  return Rational(BigInt(count), BigInt(1) << m);
}

// Deterministic random instances for property tests.
inline Instance random_instance(std::uint64_t seed, int max_groups, int max_group_size, int max_m,
                                int max_utility) {
  groupmms::SplitMix64 rng(seed);
  const int g = 1 + static_cast<int>(groupmms::bounded_draw(rng, max_groups));
  const int m = 1 + static_cast<int>(groupmms::bounded_draw(rng, max_m));
  std::vector<std::vector<UtilityVector>> groups;
  for (int i = 0; i < g; ++i) {
    const int n = 1 + static_cast<int>(groupmms::bounded_draw(rng, max_group_size));
    std::vector<UtilityVector> group;
    for (int j = 0; j < n; ++j) {
      UtilityVector u;
      for (int k = 0; k < m; ++k) {
        u.emplace_back(BigInt(static_cast<long long>(
                           groupmms::bounded_draw(rng, max_utility + 1))),
                       BigInt(1));
      }
      group.push_back(std::move(u));
    }
    groups.push_back(std::move(group));
  }
  return groupmms::validate_instance(m, std::move(groups));
}

inline UtilityVector random_vector(std::uint64_t seed, int m, int max_utility) {
  groupmms::SplitMix64 rng(seed);
  UtilityVector u;
  for (int k = 0; k < m; ++k) {
    u.emplace_back(BigInt(static_cast<long long>(groupmms::bounded_draw(rng, max_utility + 1))),
                   BigInt(1));
  }
  return u;
}

}  // namespace testutil
