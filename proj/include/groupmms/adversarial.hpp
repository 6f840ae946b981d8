#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupmms/covering.hpp"
#include "groupmms/instance.hpp"

namespace groupmms {

enum class GroupMode {
  identical,  // every item worth 1 to every member; needs t_i <= floor(m/p) - 1
  covering,   // member j dislikes exactly block j; needs m-(p-1) > t_i and a
              // design of at most n_i blocks
};

struct GenericLbParams {
  int m = 0;
  int p = 0;
  std::vector<int> t;
  std::vector<std::uint64_t> sizes;
  std::vector<GroupMode> modes;
};

// Infeasibility claim attached to a generated instance. `checked` flips to
// true only after the exhaustive oracle confirms no MMS^p allocation.
struct Certificate {
  std::string family;
  int p = 0;
  bool checked = false;
  std::string note;
};

struct GeneratedInstance {
  Instance instance;
  Certificate certificate;
};

inline constexpr std::uint64_t kDefaultAgentCap = 1'000'000;

// Hard family: covering-group member (i,j) values her block's items at
// 1/(m-(p-1)) and everything else at 1, so any bundle of <= t_i items fails
// someone; identical groups force floor(m/p) items each. With
// t_1+...+t_g+g > m there are not enough items, hence no MMS^p allocation.
// Blocks recycle cyclically when a design has fewer than n_i blocks.
// Errors: CONDITION_VIOLATION, DESIGN_INVALID, DESIGN_TOO_BIG.
GeneratedInstance generic_instance(const GenericLbParams& params,
                                   const std::vector<std::optional<CoveringDesign>>& designs);

// Builds greedy designs for the covering groups and materializes the family.
GeneratedInstance materialize(const GenericLbParams& params, const std::string& family,
                              std::uint64_t agent_cap = kDefaultAgentCap);

// Balanced parameterization: t_i = 2*floor(log2(n_i+1)/6), p = sum of the
// floors, m = 2p. Requires n_1 >= ... >= n_g >= 63 and the first floor at
// most the sum of the rest (HYPOTHESIS_VIOLATION otherwise).
GenericLbParams lb1_params(const std::vector<std::uint64_t>& sizes);

// Unbalanced parameterizations. Their hypotheses need astronomically large
// first groups (beta1 >= 1000 forces n1 > 2^1000), so materialization always
// raises HYPOTHESIS_VIOLATION on representable sizes; the symbolic
// calculators below take k_i = log2(n_i + 1) and report the parameters.
GenericLbParams lb2_params(const std::vector<std::uint64_t>& sizes);
GenericLbParams lb3_params(std::uint64_t n1, int g);

struct SymbolicParams {
  bool trivial_bound = false;  // p too small for the family to say anything
  long long p = 0;
  double m = 0;
  std::vector<double> t;
};

SymbolicParams lb2_symbolic(const std::vector<double>& log_sizes);
SymbolicParams lb3_symbolic(double log_n1, int g);

// g singleton groups, g-1 identical items: no MMS^(g-1) allocation.
GeneratedInstance identical_items_instance(int g);

// Two groups x three agents over three items; each agent values a distinct
// pair at 1. Every agent's MMS^2 is 1 but any split starves someone, so the
// minimum feasible p is 3.
Instance footnote_instance();

// Equal two-group family: p = 1 + floor(log2(n')/2), t = p-1, m = 2t+1, both
// groups covering. TRIVIAL_REGIME for n' < 4.
GenericLbParams equal_two_group_params(std::uint64_t n_prime);

std::string serialize_certificate(const Certificate& cert);

}  // namespace groupmms
