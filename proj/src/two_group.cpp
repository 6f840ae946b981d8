#include "groupmms/two_group.hpp"

#include <algorithm>
#include <bit>

#include "groupmms/errors.hpp"
#include "groupmms/group_alloc.hpp"
#include "groupmms/rng.hpp"
#include "int_weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupmms {

namespace {

constexpr std::uint64_t kTwoGroupSizeGuard = 1'000'000;

Rational success_term(std::uint64_t n, int p) {
  // (1 - 2^(1-p))^n
  const Rational base = Rational(1) - Rational(BigInt(1), BigInt(1) << (p - 1));
  return pow_rational(base, n);
}

}  // namespace

TwoGroupBound two_group_p(std::uint64_t n1, std::uint64_t n2) {
  if (n1 < 1 || n2 < 1) fail(Errc::condition_violation, "group sizes must be positive");
  if (n1 > kTwoGroupSizeGuard || n2 > kTwoGroupSizeGuard) {
    fail(Errc::too_large, "exact evaluation is limited to sizes <= 10^6; corollary_p covers "
                          "larger groups");
  }
  for (int p = 1;; ++p) {
    if (success_term(n1, p) + success_term(n2, p) >= Rational(1)) return TwoGroupBound{n1, n2, p};
  }
}

int corollary_p(std::uint64_t n1, std::uint64_t n2) {
  if (n1 < 1 || n2 < 1) fail(Errc::condition_violation, "group sizes must be positive");
  return 1 + ceil_log2(n1 + n2);
}

Rational kleitman_bound(std::uint64_t n1, std::uint64_t n2, int p) {
  if (p < 1) fail(Errc::condition_violation, "p must be positive");
  return success_term(n1, p) + success_term(n2, p) - Rational(1);
}

std::optional<Allocation> random_allocation_search(const Instance& inst, int p, int trials,
                                                   std::uint64_t seed, int exact_limit) {
  const int g = inst.group_count();
  const int m = inst.m;
  const Bundle items = all_items(m);
  std::vector<std::vector<Rational>> thresholds(g);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      thresholds[i].push_back(exact_mms(inst.groups[i][j], p, items, exact_limit).value);
    }
  }
  SplitMix64 rng(seed);
  std::vector<int> assignment(m);
  for (int trial = 0; trial < trials; ++trial) {
    for (int item = 0; item < m; ++item) {
      assignment[item] = g == 2 ? static_cast<int>(rng.next() & 1)
                                : static_cast<int>(bounded_draw(rng, g));
    }
    Allocation alloc;
    alloc.bundles.assign(g, Bundle{});
    for (int item = 0; item < m; ++item) alloc.bundles[assignment[item]].push_back(item);
    bool ok = true;
    for (int i = 0; i < g && ok; ++i) {
      for (int j = 0; j < inst.group_size(i) && ok; ++j) {
        ok = utility(inst.groups[i][j], alloc.bundles[i]) >= thresholds[i][j];
      }
    }
    if (ok) return alloc;
  }
  return std::nullopt;
}

namespace {

// One agent's pass test against the first-group sum. A first-group agent
// needs sum >= lo; a second-group agent sees the complement, so she needs
// sum <= hi = total - threshold.
template <class Int>
struct FractionAgent {
  std::vector<Int> w;
  Int bound{};
  bool first_group = false;
  Int sum{};

  bool passes() const { return first_group ? sum >= bound : sum <= bound; }
};

template <class Int>
std::uint64_t fraction_count_range(std::vector<FractionAgent<Int>> agents, int m,
                                   std::uint64_t begin, std::uint64_t end) {
  const std::uint64_t gray_begin = begin ^ (begin >> 1);
  for (auto& agent : agents) {
    agent.sum = Int{};
    for (int b = 0; b < m; ++b) {
      if ((gray_begin >> b) & 1) agent.sum += agent.w[b];
    }
  }
  auto all_pass = [&] {
    for (const auto& agent : agents) {
      if (!agent.passes()) return false;
    }
    return true;
  };
  std::uint64_t count = all_pass() ? 1 : 0;
  std::uint64_t gray = gray_begin;
  for (std::uint64_t r = begin + 1; r < end; ++r) {
    const int b = std::countr_zero(r);
    const std::uint64_t bit = 1ULL << b;
    gray ^= bit;
    if (gray & bit) {
      for (auto& agent : agents) agent.sum += agent.w[b];
    } else {
      for (auto& agent : agents) agent.sum -= agent.w[b];
    }
    if (all_pass()) ++count;
  }
  return count;
}

template <class Int>
std::vector<FractionAgent<Int>> fraction_agents(const Instance& inst, int p);

template <>
std::vector<FractionAgent<BigInt>> fraction_agents(const Instance& inst, int p) {
  const Bundle items = all_items(inst.m);
  std::vector<FractionAgent<BigInt>> agents;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      const Rational mms = exact_mms(inst.groups[i][j], p, items, kSubsetEnumLimit).value;
      detail::ScaledVector scaled = detail::scale_vector(inst.groups[i][j], items, mms);
      FractionAgent<BigInt> agent;
      agent.first_group = (i == 0);
      agent.bound = agent.first_group ? scaled.threshold : scaled.total - scaled.threshold;
      agent.w = std::move(scaled.w);
      agents.push_back(std::move(agent));
    }
  }
  return agents;
}

std::optional<std::vector<FractionAgent<std::uint64_t>>> narrow_agents(
    const std::vector<FractionAgent<BigInt>>& agents) {
  std::vector<FractionAgent<std::uint64_t>> out;
  const BigInt max64 = (BigInt(1) << 64) - 2;
  for (const auto& agent : agents) {
    FractionAgent<std::uint64_t> narrow;
    narrow.first_group = agent.first_group;
    BigInt total = 0;
    for (const BigInt& wi : agent.w) total += wi;
    if (total > max64) return std::nullopt;
    // bound < 0 means the second-group agent can never pass; saturating a
    // first-group bound above total means the same on her side
    if (agent.bound < 0) {
      if (!agent.first_group) return std::nullopt;  // passes always; keep exact path simple
      narrow.bound = 0;
    } else if (agent.bound > total) {
      if (!agent.first_group) {
        narrow.bound = total.convert_to<std::uint64_t>();  // sum <= bound: always true
      } else {
        narrow.bound = total.convert_to<std::uint64_t>() + 1;  // sum >= bound: never
      }
    } else {
      narrow.bound = agent.bound.convert_to<std::uint64_t>();
    }
    for (const BigInt& wi : agent.w) narrow.w.push_back(wi.convert_to<std::uint64_t>());
    out.push_back(std::move(narrow));
  }
  return out;
}

template <class Int>
std::uint64_t fraction_count_parallel(const std::vector<FractionAgent<Int>>& agents, int m) {
  const std::uint64_t masks = 1ULL << m;
  int chunks = 1;
#ifdef _OPENMP
  chunks = static_cast<int>(std::min<std::uint64_t>(masks, 8 * omp_get_max_threads()));
#endif
  std::uint64_t counted = 0;
#pragma omp parallel for reduction(+ : counted) schedule(static)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t begin = masks / chunks * c + std::min<std::uint64_t>(c, masks % chunks);
    const std::uint64_t size = masks / chunks + (static_cast<std::uint64_t>(c) < masks % chunks);
    counted += fraction_count_range(agents, m, begin, begin + size);
  }
  return counted;
}

void check_fraction_pre(const Instance& inst) {
  if (inst.group_count() != 2) {
    fail(Errc::condition_violation, "allocation fraction is defined for exactly two groups");
  }
  if (inst.m > kSubsetEnumLimit) {
    fail(Errc::too_large, "allocation enumeration is limited to " +
                              std::to_string(kSubsetEnumLimit) + " items");
  }
}

}  // namespace

Rational exact_allocation_fraction(const Instance& inst, int p) {
  check_fraction_pre(inst);
  const auto agents = fraction_agents<BigInt>(inst, p);
  std::uint64_t count = 0;
  if (const auto narrow = narrow_agents(agents)) {
    count = fraction_count_parallel(*narrow, inst.m);
  } else {
    count = fraction_count_parallel(agents, inst.m);
  }
  return Rational(BigInt(count), BigInt(1) << inst.m);
}

// Definition transcription kept as the reference for the Gray-code kernel:
// build both bundles for every mask and evaluate utilities directly.
Rational exact_allocation_fraction_serial(const Instance& inst, int p) {
  check_fraction_pre(inst);
  const Bundle items = all_items(inst.m);
  std::vector<std::vector<Rational>> thresholds(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      thresholds[i].push_back(exact_mms(inst.groups[i][j], p, items, kSubsetEnumLimit).value);
    }
  }
  const std::uint64_t masks = 1ULL << inst.m;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    Allocation alloc;
    alloc.bundles.assign(2, Bundle{});
    for (int item = 0; item < inst.m; ++item) {
      alloc.bundles[(mask >> item) & 1 ? 0 : 1].push_back(item);
    }
    bool ok = true;
    for (int i = 0; i < 2 && ok; ++i) {
      for (int j = 0; j < inst.group_size(i) && ok; ++j) {
        ok = utility(inst.groups[i][j], alloc.bundles[i]) >= thresholds[i][j];
      }
    }
    if (ok) ++count;
  }
  return Rational(BigInt(count), BigInt(1) << inst.m);
}

}  // namespace groupmms
