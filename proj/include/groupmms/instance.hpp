#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupmms/rational.hpp"

namespace groupmms {

// Item indices are 0-based internally; serialized documents use 1-based ids.
using Bundle = std::vector<int>;

using UtilityVector = std::vector<Rational>;

struct AgentId {
  int group = 0;
  int agent = 0;
};

inline bool operator==(AgentId a, AgentId b) { return a.group == b.group && a.agent == b.agent; }
inline bool operator<(AgentId a, AgentId b) {
  return a.group != b.group ? a.group < b.group : a.agent < b.agent;
}

// Immutable problem data: m items, g groups, one non-negative utility vector
// of length m per agent. Construct through validate_instance or deserialize.
struct Instance {
  int m = 0;
  std::vector<std::vector<UtilityVector>> groups;

  int group_count() const { return static_cast<int>(groups.size()); }
  int group_size(int i) const { return static_cast<int>(groups[i].size()); }
  int agent_count() const;
  std::vector<std::uint64_t> sizes() const;
  const UtilityVector& utilities(AgentId id) const { return groups[id.group][id.agent]; }
};

// Ordered partition of {0,..,m-1} into one bundle per group.
struct Allocation {
  std::vector<Bundle> bundles;
};

// Checks every invariant and reports all violations at once
// (NEGATIVE_UTILITY, LENGTH_MISMATCH, EMPTY_GROUP).
Instance validate_instance(int m, std::vector<std::vector<UtilityVector>> groups);

Instance drop_agent(const Instance& inst, int group, int agent);  // LAST_AGENT
Instance drop_group(const Instance& inst, int group);             // LAST_GROUP

// Canonical text document; round-trips byte-identically.
std::string serialize_instance(const Instance& inst);
Instance deserialize_instance(const std::string& text);

std::string serialize_allocation(const Allocation& alloc);
Allocation deserialize_allocation(const std::string& text);

bool is_partition(const Allocation& alloc, int m);

Bundle all_items(int m);

Rational utility(const UtilityVector& u, const Bundle& items);

// beta_i = log2(n_i+1) / log2((n_2+1)...(n_g+1)); requires g >= 2.
// Floating point only: used in bound formulas, never in feasibility logic.
std::vector<double> beta_profile(const std::vector<std::uint64_t>& sizes);

// Random instance with i.i.d. uniform integer utilities in [umin, umax];
// the benchmark/simulation family.
Instance uniform_instance(const std::vector<int>& sizes, int m, int umin, int umax,
                          std::uint64_t seed);

}  // namespace groupmms
