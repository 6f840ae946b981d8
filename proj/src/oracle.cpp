#include "groupmms/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>

#include "groupmms/errors.hpp"
#include "int_weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupmms {

namespace {

// Items in descending max-agent-value order: hard items first fails fast on
// infeasible instances.
std::vector<int> oracle_item_order(const Instance& inst) {
  const int m = inst.m;
  std::vector<Rational> max_value(m, Rational(0));
  for (const auto& group : inst.groups) {
    for (const auto& u : group) {
      for (int item = 0; item < m; ++item) {
        if (u[item] > max_value[item]) max_value[item] = u[item];
      }
    }
  }
  std::vector<int> order = all_items(m);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (max_value[a] != max_value[b]) return max_value[b] < max_value[a];
    return a < b;
  });
  return order;
}

// For two groups with identical agent multisets, swapping labels maps
// feasible allocations to feasible allocations, so the first branched item
// may be confined to the lower-indexed twin. That restriction also keeps the
// lexicographically smallest witness reachable.
std::vector<bool> first_item_groups(const Instance& inst) {
  const int g = inst.group_count();
  std::vector<std::vector<UtilityVector>> signature(g);
  for (int i = 0; i < g; ++i) {
    signature[i] = inst.groups[i];
    std::sort(signature[i].begin(), signature[i].end());
  }
  std::vector<bool> allowed(g, true);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < i; ++j) {
      if (signature[i] == signature[j]) {
        allowed[i] = false;
        break;
      }
    }
  }
  return allowed;
}

template <class Int>
struct OracleAgent {
  int group = 0;
  std::vector<Int> w;       // in DFS item order
  std::vector<Int> suffix;  // suffix[d] = w[d] + ... + w[m-1]
  Int threshold{};
};

template <class Int>
struct OracleSearch {
  int g = 0;
  int m = 0;
  std::vector<OracleAgent<Int>> agents;
  std::vector<bool> first_allowed;

  std::vector<int> assign;
  std::vector<Int> sums;  // one running bundle value per agent
  std::vector<int> witness;
  bool found = false;

  // Cooperative cancellation for the parallel driver: a worker abandons its
  // prefix once a lower-indexed prefix has produced a witness.
  const std::atomic<std::int64_t>* abort_below = nullptr;
  std::int64_t my_rank = 0;
  std::uint64_t ticks = 0;

  bool aborted() {
    if (!abort_below) return false;
    if ((++ticks & 1023) != 0) return false;
    return abort_below->load(std::memory_order_relaxed) < my_rank;
  }

  bool viable(int d) const {
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (sums[a] + agents[a].suffix[d] < agents[a].threshold) return false;
    }
    return true;
  }

  void dfs(int d) {
    if (found || aborted()) return;
    if (!viable(d)) return;
    if (d == m) {
      witness = assign;
      found = true;
      return;
    }
    for (int grp = 0; grp < g; ++grp) {
      if (d == 0 && !first_allowed[grp]) continue;
      assign[d] = grp;
      for (std::size_t a = 0; a < agents.size(); ++a) {
        if (agents[a].group == grp) sums[a] += agents[a].w[d];
      }
      dfs(d + 1);
      for (std::size_t a = 0; a < agents.size(); ++a) {
        if (agents[a].group == grp) sums[a] -= agents[a].w[d];
      }
      if (found) return;
    }
  }
};

template <class Int>
OracleSearch<Int> make_search(const Instance& inst, const std::vector<OracleAgent<Int>>& agents) {
  OracleSearch<Int> search;
  search.g = inst.group_count();
  search.m = inst.m;
  search.agents = agents;
  search.first_allowed = first_item_groups(inst);
  search.assign.assign(inst.m, 0);
  search.sums.assign(agents.size(), Int{});
  return search;
}

Allocation allocation_from(const std::vector<int>& order, const std::vector<int>& assign, int g) {
  Allocation alloc;
  alloc.bundles.assign(g, Bundle{});
  for (std::size_t d = 0; d < order.size(); ++d) alloc.bundles[assign[d]].push_back(order[d]);
  for (auto& b : alloc.bundles) std::sort(b.begin(), b.end());
  return alloc;
}

template <class Int>
std::optional<Allocation> search_serial(const Instance& inst, const std::vector<int>& order,
                                        const std::vector<OracleAgent<Int>>& agents) {
  OracleSearch<Int> search = make_search(inst, agents);
  search.dfs(0);
  if (!search.found) return std::nullopt;
  return allocation_from(order, search.witness, inst.group_count());
}

template <class Int>
std::optional<Allocation> search_parallel(const Instance& inst, const std::vector<int>& order,
                                          const std::vector<OracleAgent<Int>>& agents) {
  const int g = inst.group_count();
  const int m = inst.m;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (threads <= 1 || m < 4) return search_serial(inst, order, agents);

  int depth = 0;
  std::int64_t prefixes = 1;
  while (depth < m - 1 && prefixes < 4LL * threads) {
    prefixes *= g;
    ++depth;
  }

  std::atomic<std::int64_t> best_rank{std::numeric_limits<std::int64_t>::max()};
  std::vector<std::vector<int>> witnesses(prefixes);
  const std::vector<bool> first_allowed = first_item_groups(inst);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t rank = 0; rank < prefixes; ++rank) {
    if (best_rank.load(std::memory_order_relaxed) < rank) continue;
    // decode the prefix, most significant digit first so rank order is the
    // lexicographic order of assignments
    OracleSearch<Int> search = make_search(inst, agents);
    search.abort_below = &best_rank;
    search.my_rank = rank;
    bool ok = true;
    std::int64_t rest = rank;
    for (int d = 0; d < depth && ok; ++d) {
      std::int64_t digit_weight = 1;
      for (int i = d + 1; i < depth; ++i) digit_weight *= g;
      const int grp = static_cast<int>(rest / digit_weight);
      rest %= digit_weight;
      if (d == 0 && !first_allowed[grp]) {
        ok = false;
        break;
      }
      search.assign[d] = grp;
      for (std::size_t a = 0; a < search.agents.size(); ++a) {
        if (search.agents[a].group == grp) search.sums[a] += search.agents[a].w[d];
      }
      ok = search.viable(d + 1);
    }
    if (!ok) continue;
    search.dfs(depth);
    if (search.found) {
      std::int64_t expected = best_rank.load();
      while (rank < expected && !best_rank.compare_exchange_weak(expected, rank)) {
      }
      witnesses[rank] = search.witness;
    }
  }

  const std::int64_t winner = best_rank.load();
  if (winner == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return allocation_from(order, witnesses[winner], g);
}

std::optional<std::vector<OracleAgent<std::uint64_t>>> narrow_oracle_agents(
    const std::vector<OracleAgent<BigInt>>& wide) {
  const BigInt max64 = (BigInt(1) << 64) - 2;
  std::vector<OracleAgent<std::uint64_t>> out;
  for (const auto& agent : wide) {
    if (agent.suffix[0] > max64 || agent.threshold < 0 || agent.threshold > max64) {
      return std::nullopt;
    }
    OracleAgent<std::uint64_t> narrow;
    narrow.group = agent.group;
    for (const auto& wi : agent.w) narrow.w.push_back(wi.convert_to<std::uint64_t>());
    for (const auto& si : agent.suffix) narrow.suffix.push_back(si.convert_to<std::uint64_t>());
    narrow.threshold = agent.threshold.convert_to<std::uint64_t>();
    out.push_back(std::move(narrow));
  }
  return out;
}

std::vector<OracleAgent<BigInt>> build_oracle_agents(const Instance& inst, int p,
                                                     const std::vector<int>& order,
                                                     const OracleBudget& budget) {
  const Bundle items = all_items(inst.m);
  const Bundle order_bundle(order.begin(), order.end());
  std::vector<OracleAgent<BigInt>> agents;
  for (int i = 0; i < inst.group_count(); ++i) {
    for (int j = 0; j < inst.group_size(i); ++j) {
      const UtilityVector& u = inst.groups[i][j];
      const Rational mms = exact_mms(u, p, items, budget.exact_limit).value;
      detail::ScaledVector scaled = detail::scale_vector(u, order_bundle, mms);
      OracleAgent<BigInt> agent;
      agent.group = i;
      agent.w = std::move(scaled.w);
      agent.threshold = scaled.threshold;
      agent.suffix.assign(inst.m + 1, BigInt(0));
      for (int d = inst.m - 1; d >= 0; --d) agent.suffix[d] = agent.suffix[d + 1] + agent.w[d];
      agents.push_back(std::move(agent));
    }
  }
  return agents;
}

void check_oracle_budget(const Instance& inst, const OracleBudget& budget) {
  const int g = inst.group_count();
  std::int64_t total = 1;
  for (int d = 0; d < inst.m; ++d) {
    if (total > budget.max_assignments / g) {
      fail(Errc::too_large, "g^m exceeds the assignment budget of " +
                                std::to_string(budget.max_assignments));
    }
    total *= g;
  }
  if (inst.m > budget.exact_limit) {
    fail(Errc::too_large, "oracle needs exact shares; m exceeds the exhaustive limit of " +
                              std::to_string(budget.exact_limit));
  }
}

template <bool Parallel>
std::optional<Allocation> oracle_run(const Instance& inst, int p, const OracleBudget& budget) {
  if (p < 1) fail(Errc::condition_violation, "p must be positive");
  check_oracle_budget(inst, budget);
  const std::vector<int> order = oracle_item_order(inst);
  const auto wide = build_oracle_agents(inst, p, order, budget);
  if (const auto narrow = narrow_oracle_agents(wide)) {
    return Parallel ? search_parallel(inst, order, *narrow) : search_serial(inst, order, *narrow);
  }
  return Parallel ? search_parallel(inst, order, wide) : search_serial(inst, order, wide);
}

}  // namespace

std::optional<Allocation> exists_mms_allocation(const Instance& inst, int p,
                                                const OracleBudget& budget) {
  return oracle_run<true>(inst, p, budget);
}

std::optional<Allocation> exists_mms_allocation_serial(const Instance& inst, int p,
                                                       const OracleBudget& budget) {
  return oracle_run<false>(inst, p, budget);
}

int min_feasible_p(const Instance& inst, const OracleBudget& budget) {
  // feasibility is monotone in p (shares only shrink), so scan upward from
  // the group-count floor; p = m + 1 zeroes every share and always succeeds
  for (int p = inst.group_count();; ++p) {
    if (exists_mms_allocation(inst, p, budget)) return p;
  }
}

}  // namespace groupmms
