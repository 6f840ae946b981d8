#include "groupmms/group_alloc.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "groupmms/errors.hpp"
#include "groupmms/rng.hpp"

namespace groupmms {

const char* fail_tag_name(FailTag tag) {
  switch (tag) {
    case FailTag::none: return "";
    case FailTag::small_set: return "SMALL_SET";
    case FailTag::remaining_value: return "REMAINING_VALUE";
    case FailTag::first_group: return "FIRST_GROUP";
    case FailTag::remaining_groups: return "REMAINING_GROUPS";
    case FailTag::inner_retries: return "INNER_RETRIES";
  }
  return "";
}

namespace {

int ceil_to_int(const Rational& r, const char* what) {
  const BigInt c = ceil_rational(r);
  if (c < 1 || c > BigInt(std::numeric_limits<int>::max())) {
    fail(Errc::condition_violation, std::string(what) + " out of range: " + format_rational(r));
  }
  return c.convert_to<int>();
}

int log_sum(const std::vector<std::uint64_t>& sizes, std::size_t from) {
  int sum = 0;
  for (std::size_t i = from; i < sizes.size(); ++i) {
    if (sizes[i] < 1) fail(Errc::condition_violation, "group sizes must be positive");
    sum += ceil_log2(sizes[i] + 1);
  }
  return sum;
}

// share = first index i with draw/2^64 < cum_i; precomputing ceil(cum_i*2^64)
// makes that an exact integer comparison (draws are integers, so
// x < c iff x < ceil(c)).
std::vector<unsigned __int128> share_cutoffs(const std::vector<Rational>& probs) {
  const BigInt two64 = BigInt(1) << 64;
  std::vector<unsigned __int128> cutoffs;
  cutoffs.reserve(probs.size());
  Rational cum(0);
  for (const auto& q : probs) {
    if (q < Rational(0)) fail(Errc::condition_violation, "negative share probability");
    cum += q;
    BigInt c = ceil_rational(cum * Rational(two64));
    if (c < 0) c = 0;
    if (c > two64) c = two64;
    const std::uint64_t low = (c & BigInt(~0ULL)).convert_to<std::uint64_t>();
    const std::uint64_t high = (c >> 64).convert_to<std::uint64_t>();
    cutoffs.push_back((static_cast<unsigned __int128>(high) << 64) | low);
  }
  cutoffs.back() = static_cast<unsigned __int128>(1) << 64;  // catch-all despite rounding
  return cutoffs;
}

std::vector<Bundle> route_items(const Bundle& items, const std::vector<Rational>& probs,
                                SplitMix64& rng) {
  const auto cutoffs = share_cutoffs(probs);
  std::vector<Bundle> shares(probs.size());
  for (int item : items) {
    const unsigned __int128 draw = rng.next();
    std::size_t share = 0;
    while (draw >= cutoffs[share]) ++share;
    shares[share].push_back(item);
  }
  return shares;
}

// Thresholds and cap-and-scale normalization for groups first_group..g-1.
// Agents with a zero threshold are satisfied by any bundle (their MMS at
// this p is zero) and stay unnormalized.
struct StageSetup {
  std::vector<std::vector<Rational>> thresholds;
  std::vector<std::vector<std::optional<NormalizedAgent>>> capped;
};

StageSetup stage_setup(const Instance& inst, int first_group, const Bundle& items, int p,
                       bool exact, int exact_limit) {
  StageSetup setup;
  for (int i = first_group; i < inst.group_count(); ++i) {
    std::vector<Rational> ts;
    std::vector<std::optional<NormalizedAgent>> caps;
    for (int j = 0; j < inst.group_size(i); ++j) {
      const UtilityVector& u = inst.groups[i][j];
      Rational t =
          (exact ? exact_mms(u, p, items, exact_limit) : lpt_mms(u, p, items)).value;
      if (t > Rational(0)) {
        caps.push_back(normalize(u, t));
      } else {
        caps.push_back(std::nullopt);
      }
      ts.push_back(std::move(t));
    }
    setup.thresholds.push_back(std::move(ts));
    setup.capped.push_back(std::move(caps));
  }
  return setup;
}

// Single-stage run over groups first_group..g-1 and the given item pool.
// first_group > 0 is the nested mode used by the two-stage algorithm.
RunReport ub1_run(const Instance& inst, int first_group, const Bundle& items,
                  const Ub1Config& cfg) {
  const int g_view = inst.group_count() - first_group;
  std::vector<std::uint64_t> sizes;
  for (int i = first_group; i < inst.group_count(); ++i) sizes.push_back(inst.group_size(i));

  RunReport report;
  report.seed = cfg.seed;
  report.rng = kRngName;
  report.p = p_ub1(sizes, cfg.c1);
  const StageSetup setup =
      stage_setup(inst, first_group, items, report.p, cfg.exact_thresholds, cfg.exact_limit);
  report.thresholds = setup.thresholds;

  std::vector<Rational> probs;
  Rational assigned(0);
  for (int v = 0; v < g_view; ++v) {
    Rational qv = cfg.c1 / Rational(2) * Rational(ceil_log2(sizes[v] + 1)) / Rational(report.p);
    assigned += qv;
    probs.push_back(std::move(qv));
  }
  probs.push_back(Rational(1) - assigned);  // residual share; 1/2 at the stock constant

  SplitMix64 rng(cfg.seed);
  std::vector<Bundle> shares = route_items(items, probs, rng);
  const Bundle& residual = shares[g_view];

  const Rational one(1);
  std::vector<ThresholdedAgent> repair;
  for (int v = 0; v < g_view; ++v) {
    for (int j = 0; j < static_cast<int>(setup.capped[v].size()); ++j) {
      const auto& cap = setup.capped[v][j];
      if (!cap) continue;
      if (utility(cap->capped, shares[v]) < one) {
        repair.push_back(ThresholdedAgent{AgentId{first_group + v, j}, cap->capped});
      }
    }
  }

  if (static_cast<int>(repair.size()) > 2 * g_view) {
    report.failed = FailTag::small_set;
    return report;
  }
  const Rational residual_needed(8 * g_view);
  for (const auto& agent : repair) {
    if (utility(agent.capped, residual) < residual_needed) {
      report.failed = FailTag::remaining_value;
      return report;
    }
  }

  const BagFillResult bags = bag_fill(repair, residual, cfg.trace);

  Allocation alloc;
  alloc.bundles.assign(g_view, Bundle{});
  for (int v = 0; v < g_view; ++v) alloc.bundles[v] = shares[v];
  for (const auto& [id, bag] : bags.served) {
    auto& bundle = alloc.bundles[id.group - first_group];
    bundle.insert(bundle.end(), bag.begin(), bag.end());
  }
  auto& first_bundle = alloc.bundles[0];
  first_bundle.insert(first_bundle.end(), bags.leftover.begin(), bags.leftover.end());
  for (auto& b : alloc.bundles) std::sort(b.begin(), b.end());

  report.success = true;
  report.allocation = std::move(alloc);
  return report;
}

}  // namespace

int p_ub1(const std::vector<std::uint64_t>& sizes, const Rational& c1) {
  if (sizes.empty()) fail(Errc::condition_violation, "need at least one group");
  if (c1 <= Rational(0)) fail(Errc::condition_violation, "c1 must be positive");
  return ceil_to_int(c1 * Rational(log_sum(sizes, 0)), "p");
}

int p_ub2(const std::vector<std::uint64_t>& sizes, const Rational& c2) {
  if (sizes.size() < 2) fail(Errc::condition_violation, "need at least two groups");
  if (c2 <= Rational(0)) fail(Errc::condition_violation, "c2 must be positive");
  const std::vector<double> beta = beta_profile(sizes);
  if (!(beta[0] > 1.0)) {
    fail(Errc::beta_too_small, "beta_1 = " + std::to_string(beta[0]) + " but the formula needs "
                                                                       "beta_1 > 1");
  }
  const double k1 = std::log2(static_cast<double>(sizes[0]) + 1.0);
  const int dominant = static_cast<int>(std::ceil(k1 / std::log2(beta[0])));
  return ceil_to_int(c2 * Rational(dominant + log_sum(sizes, 1)), "p");
}

RunReport allocate_ub1(const Instance& inst, const Ub1Config& cfg) {
  return ub1_run(inst, 0, all_items(inst.m), cfg);
}

RunReport allocate_ub2(const Instance& inst, const Ub2Config& cfg) {
  const int g = inst.group_count();
  if (g < 2) fail(Errc::condition_violation, "two-stage allocation needs at least two groups");
  const std::vector<std::uint64_t> sizes = inst.sizes();

  RunReport report;
  report.seed = cfg.seed;
  report.rng = kRngName;
  report.p = p_ub2(sizes, cfg.c2);

  const Bundle items = all_items(inst.m);
  const StageSetup setup =
      stage_setup(inst, 0, items, report.p, cfg.exact_thresholds, cfg.exact_limit);
  report.thresholds = setup.thresholds;

  const Rational q = cfg.c2 / Rational(1000) * Rational(log_sum(sizes, 1)) / Rational(report.p);
  if (q <= Rational(0) || q >= Rational(1)) {
    fail(Errc::condition_violation, "residual probability q = " + format_rational(q) +
                                        " is outside (0,1)");
  }

  SplitMix64 rng(cfg.seed);
  std::vector<Bundle> shares = route_items(items, {Rational(1) - q, q}, rng);
  const Bundle& first_share = shares[0];
  const Bundle& residual = shares[1];

  const Rational one(1);
  for (int j = 0; j < inst.group_size(0); ++j) {
    const auto& cap = setup.capped[0][j];
    if (cap && utility(cap->capped, first_share) < one) {
      report.failed = FailTag::first_group;
      return report;
    }
  }
  const Rational residual_needed = q * Rational(report.p) / Rational(2);
  for (int i = 1; i < g; ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      const auto& cap = setup.capped[i][j];
      if (cap && utility(cap->capped, residual) < residual_needed) {
        report.failed = FailTag::remaining_groups;
        return report;
      }
    }
  }

  for (int attempt = 0; attempt < cfg.retries; ++attempt) {
    Ub1Config inner;
    inner.c1 = cfg.inner_c1;
    inner.seed = derive_seed(cfg.seed, attempt + 1);
    inner.exact_thresholds = cfg.exact_thresholds;
    inner.exact_limit = cfg.exact_limit;
    RunReport nested = ub1_run(inst, 1, residual, inner);
    if (!nested.success) continue;
    Allocation alloc;
    alloc.bundles.push_back(first_share);
    for (auto& b : nested.allocation->bundles) alloc.bundles.push_back(std::move(b));
    report.success = true;
    report.allocation = std::move(alloc);
    return report;
  }
  report.failed = FailTag::inner_retries;
  return report;
}

std::vector<std::vector<bool>> verify_sufficient(
    const Instance& inst, const Allocation& alloc,
    const std::vector<std::vector<Rational>>& thresholds) {
  if (static_cast<int>(alloc.bundles.size()) != inst.group_count()) {
    fail(Errc::condition_violation, "allocation has " + std::to_string(alloc.bundles.size()) +
                                        " bundles for " + std::to_string(inst.group_count()) +
                                        " groups");
  }
  const Rational factor(4, 3);
  std::vector<std::vector<bool>> ok(inst.group_count());
  for (int i = 0; i < inst.group_count(); ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      ok[i].push_back(utility(inst.groups[i][j], alloc.bundles[i]) >=
                      factor * thresholds.at(i).at(j));
    }
  }
  return ok;
}

std::vector<std::vector<bool>> verify_exact(const Instance& inst, const Allocation& alloc, int p,
                                            int exact_limit) {
  if (static_cast<int>(alloc.bundles.size()) != inst.group_count()) {
    fail(Errc::condition_violation, "allocation has " + std::to_string(alloc.bundles.size()) +
                                        " bundles for " + std::to_string(inst.group_count()) +
                                        " groups");
  }
  const Bundle items = all_items(inst.m);
  std::vector<std::vector<bool>> ok(inst.group_count());
  for (int i = 0; i < inst.group_count(); ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      const Rational mms = exact_mms(inst.groups[i][j], p, items, exact_limit).value;
      ok[i].push_back(utility(inst.groups[i][j], alloc.bundles[i]) >= mms);
    }
  }
  return ok;
}

}  // namespace groupmms
