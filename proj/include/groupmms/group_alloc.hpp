#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupmms/bagfill.hpp"
#include "groupmms/instance.hpp"
#include "groupmms/mms.hpp"

namespace groupmms {

struct Ub1Config {
  Rational c1{80};          // p = ceil(c1 * sum of ceil(log2(n_i+1)))
  std::uint64_t seed = 0;
  bool exact_thresholds = false;  // tests may swap LPT thresholds for exact ones
  int exact_limit = kDefaultExactLimit;
  BagTrace trace;
};

struct Ub2Config {
  Rational c2{320000};
  Rational inner_c1{80};  // constant for the nested single-stage runs
  int retries = 10;
  std::uint64_t seed = 0;
  bool exact_thresholds = false;
  int exact_limit = kDefaultExactLimit;
};

enum class FailTag {
  none,
  small_set,         // repair set larger than 2g
  remaining_value,   // some repair agent values the residual share below 8g
  first_group,       // some first-group agent below 1 on its share
  remaining_groups,  // some later-group agent below qp/2 on the residual
  inner_retries,     // nested runs all failed
};

const char* fail_tag_name(FailTag tag);

struct RunReport {
  bool success = false;
  std::optional<Allocation> allocation;
  std::vector<std::vector<Rational>> thresholds;  // t_a per [group][agent]
  FailTag failed = FailTag::none;
  std::uint64_t seed = 0;
  int p = 0;
  std::string rng;
};

int p_ub1(const std::vector<std::uint64_t>& sizes, const Rational& c1 = Rational(80));

// p = ceil(c2 * (ceil(log2(n1+1)/log2(beta1)) + sum_{i>=2} ceil(log2(n_i+1)))).
// BETA_TOO_SMALL unless beta1 > 1.
int p_ub2(const std::vector<std::uint64_t>& sizes, const Rational& c2 = Rational(320000));

// Single-stage randomized allocation: LPT thresholds at p_ub1, cap-and-scale
// normalization, one random share per group plus a residual share, condition
// checks (|N'| <= 2g and residual value >= 8g on N'), then bag filling for
// the repair set. Failure tags are ordinary outcomes, not errors.
RunReport allocate_ub1(const Instance& inst, const Ub1Config& cfg);

// Two-stage variant for a dominant first group: route items to the first
// group's share with probability 1-q, check the two coverage conditions,
// then allocate the residual to groups 2..g with nested single-stage runs.
RunReport allocate_ub2(const Instance& inst, const Ub2Config& cfg);

// True per agent iff u_a(own bundle) >= (4/3) t_a; all-true certifies the
// allocation gives everyone her MMS at the thresholds' p.
std::vector<std::vector<bool>> verify_sufficient(
    const Instance& inst, const Allocation& alloc,
    const std::vector<std::vector<Rational>>& thresholds);

// True per agent iff u_a(own bundle) >= exact MMS^p over all items.
std::vector<std::vector<bool>> verify_exact(const Instance& inst, const Allocation& alloc,
                                            int p, int exact_limit = kDefaultExactLimit);

}  // namespace groupmms
