#include "groupmms/mms.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <utility>

#include "groupmms/errors.hpp"
#include "int_weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupmms {

namespace {

void require_positive_p(int p) {
  if (p < 1) fail(Errc::condition_violation, "p must be a positive integer");
}

std::vector<int> by_value_desc(const UtilityVector& u, const Bundle& items) {
  std::vector<int> order(items);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (u[a] != u[b]) return u[b] < u[a];
    return a < b;
  });
  return order;
}

// Depth-first max-min partition over p labeled bundles. Items arrive in
// descending weight order; bundles with equal loads are interchangeable, so
// only the first of each load value is branched. The LPT assignment seeds
// the incumbent and improvements are strict, which keeps value and witness
// deterministic.
template <class Int>
struct PartitionSearch {
  int p = 0;
  std::vector<Int> w;
  std::vector<Int> suffix;
  std::vector<Int> loads;
  std::vector<int> assign;
  std::vector<int> best_assign;
  Int best{};
  Int total{};
  bool done = false;

  void run() {
    const int k = static_cast<int>(w.size());
    suffix.assign(k + 1, Int{});
    for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + w[i];
    total = suffix[0];
    loads.assign(p, Int{});
    assign.assign(k, 0);
    warm_start();
    if (!at_ceiling(best)) dfs(0);
  }

  // max-min can never exceed floor(total / p)
  bool at_ceiling(const Int& value) const { return value >= total / p; }

  void warm_start() {
    using Slot = std::pair<Int, int>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<Slot>> heap;
    for (int b = 0; b < p; ++b) heap.emplace(Int{}, b);
    std::vector<Int> lpt_loads(p, Int{});
    best_assign.assign(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto [load, b] = heap.top();
      heap.pop();
      best_assign[i] = b;
      lpt_loads[b] = load + w[i];
      heap.emplace(lpt_loads[b], b);
    }
    best = *std::min_element(lpt_loads.begin(), lpt_loads.end());
  }

  void dfs(int i) {
    const int k = static_cast<int>(w.size());
    // trailing zero-weight items cannot move the minimum
    if (i == k || w[i] == Int{}) {
      const Int value = *std::min_element(loads.begin(), loads.end());
      if (value > best) {
        best = value;
        best_assign = assign;
        for (int j = i; j < k; ++j) best_assign[j] = 0;
        if (at_ceiling(best)) done = true;
      }
      return;
    }
    const Int floor_load = *std::min_element(loads.begin(), loads.end());
    if (floor_load + suffix[i] <= best) return;
    for (int b = 0; b < p; ++b) {
      bool duplicate = false;
      for (int b2 = 0; b2 < b && !duplicate; ++b2) duplicate = (loads[b2] == loads[b]);
      if (duplicate) continue;
      loads[b] += w[i];
      assign[i] = b;
      dfs(i + 1);
      loads[b] -= w[i];
      if (done) return;
    }
  }
};

std::vector<Bundle> bundles_from_assignment(const std::vector<int>& order,
                                            const std::vector<int>& assign, int p) {
  std::vector<Bundle> bundles(p);
  for (std::size_t i = 0; i < order.size(); ++i) bundles[assign[i]].push_back(order[i]);
  for (auto& b : bundles) std::sort(b.begin(), b.end());
  return bundles;
}

template <class Int>
MmsResult run_partition_search(int p, const std::vector<int>& order, std::vector<Int> w,
                               const BigInt& scale_lcm) {
  PartitionSearch<Int> search;
  search.p = p;
  search.w = std::move(w);
  search.run();
  MmsResult result;
  result.value = Rational(BigInt(search.best), scale_lcm);
  result.witness = bundles_from_assignment(order, search.best_assign, p);
  result.exact = true;
  return result;
}

}  // namespace

MmsResult exact_mms(const UtilityVector& u, int p, const Bundle& items, int limit) {
  require_positive_p(p);
  const int k = static_cast<int>(items.size());
  if (k > limit) {
    fail(Errc::too_large, std::to_string(k) + " items exceed the exhaustive limit of " +
                              std::to_string(limit));
  }
  if (p > k) {
    // some part is empty in every partition
    MmsResult result;
    result.value = Rational(0);
    result.witness.assign(p, Bundle{});
    for (int i = 0; i < k; ++i) result.witness[i] = {items[i]};
    result.exact = true;
    return result;
  }
  const std::vector<int> order = by_value_desc(u, items);
  const Bundle order_bundle(order.begin(), order.end());
  detail::ScaledVector scaled = detail::scale_vector(u, order_bundle, Rational(0));
  if (auto narrow = detail::narrow(scaled)) {
    return run_partition_search(p, order, std::move(narrow->w), scaled.lcm);
  }
  return run_partition_search(p, order, std::move(scaled.w), scaled.lcm);
}

MmsResult lpt_mms(const UtilityVector& u, int p, const Bundle& items) {
  require_positive_p(p);
  const std::vector<int> order = by_value_desc(u, items);
  if (p >= static_cast<int>(order.size())) {
    // every item lands in its own (empty, lowest-index) bundle
    MmsResult result;
    result.witness.assign(p, Bundle{});
    for (std::size_t i = 0; i < order.size(); ++i) result.witness[i] = {order[i]};
    result.value =
        p == static_cast<int>(order.size()) ? u[order.back()] : Rational(0);
    result.exact = false;
    return result;
  }
  using Slot = std::pair<Rational, int>;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<Slot>> heap;
  for (int b = 0; b < p; ++b) heap.emplace(Rational(0), b);
  std::vector<Rational> loads(p, Rational(0));
  std::vector<Bundle> bundles(p);
  for (int item : order) {
    auto [load, b] = heap.top();
    heap.pop();
    loads[b] = load + u[item];
    bundles[b].push_back(item);
    heap.emplace(loads[b], b);
  }
  for (auto& b : bundles) std::sort(b.begin(), b.end());
  MmsResult result;
  result.value = *std::min_element(loads.begin(), loads.end());
  result.witness = std::move(bundles);
  result.exact = false;
  return result;
}

NormalizedAgent normalize(const UtilityVector& u, const Rational& threshold) {
  if (threshold <= Rational(0)) {
    fail(Errc::nonpositive_threshold, "threshold " + format_rational(threshold));
  }
  NormalizedAgent out;
  out.scale = Rational(3, 4) / threshold;
  out.capped.reserve(u.size());
  const Rational one(1);
  for (const auto& value : u) {
    Rational scaled = value * out.scale;
    out.capped.push_back(scaled > one ? one : std::move(scaled));
  }
  return out;
}

std::optional<std::vector<Bundle>> sufficiency_witness(const NormalizedAgent& agent, int p,
                                                       const Bundle& items) {
  require_positive_p(p);
  const Rational one(1);
  Rational total(0);
  for (int item : items) {
    const Rational& e = agent.capped.at(item);
    if (e > one || e < Rational(0)) {
      fail(Errc::cap_violation, "capped utility " + format_rational(e) + " for item " +
                                    std::to_string(item + 1) + " is outside [0,1]");
    }
    total += e;
  }
  if (total < Rational(2 * p)) return std::nullopt;
  std::vector<Bundle> bundles(p);
  std::size_t next = 0;
  for (int b = 0; b < p; ++b) {
    Rational value(0);
    while (value < one) {
      // cannot run out: every closed bundle is < 2 and the total is >= 2p
      bundles[b].push_back(items[next]);
      value += agent.capped[items[next]];
      ++next;
    }
  }
  for (; next < items.size(); ++next) bundles[p - 1].push_back(items[next]);
  return bundles;
}

namespace {

// Counts Gray-code ranks r in [begin, end) whose subset sum reaches the
// threshold. Rank r encodes the subset r ^ (r >> 1); consecutive ranks
// differ in exactly bit countr_zero(r).
template <class Int>
std::uint64_t gray_count_range(const std::vector<Int>& w, const Int& threshold,
                               std::uint64_t begin, std::uint64_t end) {
  const int k = static_cast<int>(w.size());
  Int sum{};
  std::uint64_t gray = begin ^ (begin >> 1);
  for (int b = 0; b < k; ++b) {
    if ((gray >> b) & 1) sum += w[b];
  }
  std::uint64_t count = sum >= threshold ? 1 : 0;
  for (std::uint64_t r = begin + 1; r < end; ++r) {
    const int b = std::countr_zero(r);
    const std::uint64_t bit = 1ULL << b;
    gray ^= bit;
    if (gray & bit) {
      sum += w[b];
    } else {
      sum -= w[b];
    }
    if (sum >= threshold) ++count;
  }
  return count;
}

template <class Int>
std::uint64_t gray_count_parallel(const std::vector<Int>& w, const Int& threshold,
                                  std::uint64_t masks) {
  int chunks = 1;
#ifdef _OPENMP
  chunks = static_cast<int>(std::min<std::uint64_t>(masks, 8 * omp_get_max_threads()));
#endif
  std::uint64_t counted = 0;
#pragma omp parallel for reduction(+ : counted) schedule(static)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t begin = masks / chunks * c + std::min<std::uint64_t>(c, masks % chunks);
    const std::uint64_t size = masks / chunks + (static_cast<std::uint64_t>(c) < masks % chunks);
    counted += gray_count_range(w, threshold, begin, begin + size);
  }
  return counted;
}

detail::ScaledVector subset_threshold_vector(const UtilityVector& u, int p) {
  require_positive_p(p);
  const int m = static_cast<int>(u.size());
  if (m > kSubsetEnumLimit) {
    fail(Errc::too_large,
         std::to_string(m) + " items exceed the enumeration limit of " +
             std::to_string(kSubsetEnumLimit));
  }
  const Bundle items = all_items(m);
  const Rational mms = exact_mms(u, p, items, kSubsetEnumLimit).value;
  return detail::scale_vector(u, items, mms);
}

}  // namespace

Rational subset_success_fraction(const UtilityVector& u, int p) {
  const detail::ScaledVector scaled = subset_threshold_vector(u, p);
  const std::uint64_t masks = 1ULL << u.size();
  std::uint64_t count = 0;
  if (const auto narrow = detail::narrow(scaled)) {
    count = gray_count_parallel(narrow->w, narrow->threshold, masks);
  } else {
    count = gray_count_parallel(scaled.w, scaled.threshold, masks);
  }
  return Rational(BigInt(count), BigInt(1) << u.size());
}

// Direct transcription of the definition, one subset-sum per mask; the
// reference the Gray-code kernel is tested against.
Rational subset_success_fraction_serial(const UtilityVector& u, int p) {
  const detail::ScaledVector scaled = subset_threshold_vector(u, p);
  const std::uint64_t masks = 1ULL << u.size();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    BigInt sum = 0;
    for (std::size_t b = 0; b < u.size(); ++b) {
      if ((mask >> b) & 1) sum += scaled.w[b];
    }
    if (sum >= scaled.threshold) ++count;
  }
  return Rational(BigInt(count), BigInt(1) << u.size());
}

}  // namespace groupmms
