#include "groupmms/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "groupmms/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupmms {

namespace {

constexpr int kMaxDesignItems = 63;  // blocks live in 64-bit masks

void check_design_args(int m, int s, int t) {
  if (m < 1 || s < 1 || t < 1 || m < s || s < t) {
    fail(Errc::condition_violation,
         "need m >= s >= t >= 1, got (" + std::to_string(m) + "," + std::to_string(s) + "," +
             std::to_string(t) + ")");
  }
  if (m > kMaxDesignItems) {
    fail(Errc::too_large, "designs support at most " + std::to_string(kMaxDesignItems) + " items");
  }
}

std::uint64_t mask_of(const Bundle& block) {
  std::uint64_t mask = 0;
  for (int item : block) mask |= 1ULL << item;
  return mask;
}

Bundle bundle_of(std::uint64_t mask) {
  Bundle b;
  while (mask) {
    const int item = std::countr_zero(mask);
    b.push_back(item);
    mask &= mask - 1;
  }
  return b;
}

// All k-subsets of [m] as masks, in lexicographic order of the sorted tuples.
std::vector<std::uint64_t> all_subsets(int m, int k, std::int64_t budget, const char* what) {
  const std::uint64_t count = binomial_u64(m, k);
  if (count > static_cast<std::uint64_t>(budget)) {
    fail(Errc::too_large, std::string(what) + " needs " + std::to_string(count) +
                              " subsets, budget is " + std::to_string(budget));
  }
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::uint64_t mask = 0;
    for (int v : pick) mask |= 1ULL << v;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

void check_blocks(const CoveringDesign& design) {
  for (const auto& block : design.blocks) {
    if (static_cast<int>(block.size()) != design.s) {
      fail(Errc::design_invalid, "block size " + std::to_string(block.size()) + ", expected s = " +
                                     std::to_string(design.s));
    }
    for (int item : block) {
      if (item < 0 || item >= design.m) {
        fail(Errc::design_invalid, "block item " + std::to_string(item + 1) + " outside [m]");
      }
    }
    Bundle sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(Errc::design_invalid, "block has repeated items");
    }
  }
}

}  // namespace

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

double erdos_spencer_bound(int m, int s, int t) {
  const double m_choose_t = static_cast<double>(binomial_u64(m, t));
  const double s_choose_t = static_cast<double>(binomial_u64(s, t));
  return m_choose_t / s_choose_t * (1.0 + std::log(s_choose_t));
}

bool verify_design(const CoveringDesign& design, std::int64_t budget) {
  check_design_args(design.m, design.s, design.t);
  check_blocks(design);
  const auto targets = all_subsets(design.m, design.t, budget, "verify");
  std::vector<std::uint64_t> blocks;
  blocks.reserve(design.blocks.size());
  for (const auto& b : design.blocks) blocks.push_back(mask_of(b));
  for (std::uint64_t target : targets) {
    bool covered = false;
    for (std::uint64_t block : blocks) {
      if ((target & ~block) == 0) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

CoveringDesign trivial_design(int m, int s, std::int64_t budget) {
  check_design_args(m, s, s);
  CoveringDesign design{m, s, s, {}};
  for (std::uint64_t mask : all_subsets(m, s, budget, "trivial design")) {
    design.blocks.push_back(bundle_of(mask));
  }
  return design;
}

namespace {

CoveringDesign greedy_impl(int m, int s, int t, std::int64_t budget, bool parallel) {
  check_design_args(m, s, t);
  const auto candidates = all_subsets(m, s, budget, "greedy candidate pool");
  auto uncovered = all_subsets(m, t, budget, "greedy targets");
  CoveringDesign design{m, s, t, {}};
  while (!uncovered.empty()) {
    const int n_candidates = static_cast<int>(candidates.size());
    std::int64_t best_count = -1;
    int best_idx = -1;
    if (parallel) {
#pragma omp parallel
      {
        std::int64_t local_count = -1;
        int local_idx = -1;
#pragma omp for schedule(static) nowait
        for (int c = 0; c < n_candidates; ++c) {
          std::int64_t covered = 0;
          for (std::uint64_t target : uncovered) covered += ((target & ~candidates[c]) == 0);
          if (covered > local_count) {
            local_count = covered;
            local_idx = c;
          }
        }
#pragma omp critical
        {
          // candidates are in lexicographic order, so the smaller index is
          // also the lexicographically smaller block
          if (local_count > best_count ||
              (local_count == best_count && local_idx >= 0 && local_idx < best_idx)) {
            best_count = local_count;
            best_idx = local_idx;
          }
        }
      }
    } else {
      for (int c = 0; c < n_candidates; ++c) {
        std::int64_t covered = 0;
        for (std::uint64_t target : uncovered) covered += ((target & ~candidates[c]) == 0);
        if (covered > best_count) {
          best_count = covered;
          best_idx = c;
        }
      }
    }
    const std::uint64_t chosen = candidates[best_idx];
    design.blocks.push_back(bundle_of(chosen));
    std::erase_if(uncovered, [&](std::uint64_t target) { return (target & ~chosen) == 0; });
  }
  return design;
}

}  // namespace

CoveringDesign greedy_design(int m, int s, int t, std::int64_t budget) {
  return greedy_impl(m, s, t, budget, true);
}

CoveringDesign greedy_design_serial(int m, int s, int t, std::int64_t budget) {
  return greedy_impl(m, s, t, budget, false);
}

namespace {

// Branch on the first uncovered t-subset: every cover must include a block
// containing it, so trying each such candidate is complete.
bool min_cover_dfs(const std::vector<std::uint64_t>& candidates,
                   const std::vector<std::uint64_t>& targets, std::vector<std::uint64_t>& chosen,
                   int depth) {
  std::uint64_t first_uncovered = 0;
  bool all_covered = true;
  for (std::uint64_t target : targets) {
    bool covered = false;
    for (std::uint64_t block : chosen) {
      if ((target & ~block) == 0) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      first_uncovered = target;
      all_covered = false;
      break;
    }
  }
  if (all_covered) return true;
  if (depth == 0) return false;
  for (std::uint64_t candidate : candidates) {
    if ((first_uncovered & ~candidate) != 0) continue;
    chosen.push_back(candidate);
    if (min_cover_dfs(candidates, targets, chosen, depth - 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

CoveringDesign min_design_exhaustive(int m, int s, int t) {
  check_design_args(m, s, t);
  if (m > 7) fail(Errc::too_large, "exhaustive minimum design supports m <= 7");
  const auto candidates = all_subsets(m, s, kDefaultCoverBudget, "exhaustive candidates");
  const auto targets = all_subsets(m, t, kDefaultCoverBudget, "exhaustive targets");
  for (int size = 1;; ++size) {
    std::vector<std::uint64_t> chosen;
    if (min_cover_dfs(candidates, targets, chosen, size)) {
      CoveringDesign design{m, s, t, {}};
      for (std::uint64_t mask : chosen) design.blocks.push_back(bundle_of(mask));
      return design;
    }
  }
}

std::string serialize_design(const CoveringDesign& design) {
  nlohmann::ordered_json doc;
  doc["m"] = design.m;
  doc["s"] = design.s;
  doc["t"] = design.t;
  auto blocks = nlohmann::ordered_json::array();
  std::vector<Bundle> sorted = design.blocks;
  for (auto& b : sorted) std::sort(b.begin(), b.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& b : sorted) {
    auto jb = nlohmann::ordered_json::array();
    for (int item : b) jb.push_back(item + 1);
    blocks.push_back(std::move(jb));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

CoveringDesign deserialize_design(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, std::string("design document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("s") || !doc.contains("t") ||
      !doc.contains("blocks") || !doc["blocks"].is_array()) {
    fail(Errc::parse_error, "design document needs fields m, s, t, blocks");
  }
  CoveringDesign design;
  design.m = doc["m"].get<int>();
  design.s = doc["s"].get<int>();
  design.t = doc["t"].get<int>();
  for (const auto& jb : doc["blocks"]) {
    if (!jb.is_array()) fail(Errc::parse_error, "blocks must be arrays of 1-based ids");
    Bundle b;
    for (const auto& cell : jb) b.push_back(cell.get<int>() - 1);
    std::sort(b.begin(), b.end());
    design.blocks.push_back(std::move(b));
  }
  return design;
}

}  // namespace groupmms
