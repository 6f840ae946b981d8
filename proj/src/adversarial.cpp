#include "groupmms/adversarial.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "groupmms/errors.hpp"

namespace groupmms {

namespace {

void check_params(const GenericLbParams& params) {
  const std::size_t g = params.sizes.size();
  if (g < 1 || params.t.size() != g || params.modes.size() != g) {
    fail(Errc::condition_violation, "parameter vectors must cover every group");
  }
  if (params.m < 1 || params.p < 1) {
    fail(Errc::condition_violation, "m and p must be positive");
  }
  long long t_sum = 0;
  for (std::size_t i = 0; i < g; ++i) {
    if (params.t[i] < 1) fail(Errc::condition_violation, "t values must be positive");
    if (params.sizes[i] < 1) fail(Errc::condition_violation, "group sizes must be positive");
    t_sum += params.t[i];
  }
  if (t_sum + static_cast<long long>(g) <= params.m) {
    fail(Errc::condition_violation,
         "t_1+...+t_g+g = " + std::to_string(t_sum + g) + " must exceed m = " +
             std::to_string(params.m));
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (params.modes[i] == GroupMode::identical) {
      if (params.t[i] > params.m / params.p - 1) {
        fail(Errc::condition_violation, "identical group " + std::to_string(i + 1) +
                                            " needs t_i <= floor(m/p)-1");
      }
    } else {
      if (params.m - (params.p - 1) <= params.t[i]) {
        fail(Errc::condition_violation, "covering group " + std::to_string(i + 1) +
                                            " needs m-(p-1) > t_i");
      }
    }
  }
}

std::string params_note(const GenericLbParams& params) {
  std::string note = "m=" + std::to_string(params.m) + " p=" + std::to_string(params.p) + " t=(";
  for (std::size_t i = 0; i < params.t.size(); ++i) {
    note += (i ? "," : "") + std::to_string(params.t[i]);
  }
  note += ") sizes=(";
  for (std::size_t i = 0; i < params.sizes.size(); ++i) {
    note += (i ? "," : "") + std::to_string(params.sizes[i]);
  }
  return note + ")";
}

}  // namespace

GeneratedInstance generic_instance(const GenericLbParams& params,
                                   const std::vector<std::optional<CoveringDesign>>& designs) {
  check_params(params);
  const std::size_t g = params.sizes.size();
  if (designs.size() != g) {
    fail(Errc::condition_violation, "one design slot per group (covering groups consume theirs)");
  }
  const int block_size = params.m - (params.p - 1);
  const Rational inside(BigInt(1), BigInt(block_size));

  std::vector<std::vector<UtilityVector>> groups;
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<UtilityVector> group;
    const auto n_i = params.sizes[i];
    if (params.modes[i] == GroupMode::identical) {
      group.assign(n_i, UtilityVector(params.m, Rational(1)));
    } else {
      if (!designs[i]) {
        fail(Errc::design_invalid, "covering group " + std::to_string(i + 1) + " has no design");
      }
      const CoveringDesign& design = *designs[i];
      if (design.m != params.m || design.s != block_size || design.t != params.t[i]) {
        fail(Errc::design_invalid,
             "group " + std::to_string(i + 1) + " needs an (m, m-(p-1), t_i) = (" +
                 std::to_string(params.m) + "," + std::to_string(block_size) + "," +
                 std::to_string(params.t[i]) + ") design");
      }
      if (!verify_design(design)) {
        fail(Errc::design_invalid, "design for group " + std::to_string(i + 1) +
                                       " leaves a t-subset uncovered");
      }
      if (design.blocks.size() > n_i) {
        fail(Errc::design_too_big, "design for group " + std::to_string(i + 1) + " has " +
                                       std::to_string(design.blocks.size()) + " blocks but only " +
                                       std::to_string(n_i) + " agents");
      }
      for (std::uint64_t j = 0; j < n_i; ++j) {
        const Bundle& block = design.blocks[j % design.blocks.size()];
        UtilityVector u(params.m, Rational(1));
        for (int item : block) u[item] = inside;
        group.push_back(std::move(u));
      }
    }
    groups.push_back(std::move(group));
  }

  GeneratedInstance out;
  out.instance = validate_instance(params.m, std::move(groups));
  out.certificate.family = "generic";
  out.certificate.p = params.p;
  out.certificate.checked = false;
  out.certificate.note = params_note(params);
  return out;
}

GeneratedInstance materialize(const GenericLbParams& params, const std::string& family,
                              std::uint64_t agent_cap) {
  check_params(params);
  std::uint64_t agents = 0;
  for (std::uint64_t n : params.sizes) agents += n;
  if (agents > agent_cap) {
    fail(Errc::too_large, std::to_string(agents) + " agents exceed the materialization cap of " +
                              std::to_string(agent_cap));
  }
  const int block_size = params.m - (params.p - 1);
  std::vector<std::optional<CoveringDesign>> designs(params.sizes.size());
  for (std::size_t i = 0; i < params.sizes.size(); ++i) {
    if (params.modes[i] != GroupMode::covering) continue;
    CoveringDesign design = greedy_design(params.m, block_size, params.t[i]);
    if (design.blocks.size() > params.sizes[i]) {
      fail(Errc::design_too_big, "greedy (" + std::to_string(params.m) + "," +
                                     std::to_string(block_size) + "," +
                                     std::to_string(params.t[i]) + ") design has " +
                                     std::to_string(design.blocks.size()) +
                                     " blocks but group " + std::to_string(i + 1) + " has only " +
                                     std::to_string(params.sizes[i]) + " agents");
    }
    designs[i] = std::move(design);
  }
  GeneratedInstance out = generic_instance(params, designs);
  out.certificate.family = family;
  return out;
}

GenericLbParams lb1_params(const std::vector<std::uint64_t>& sizes) {
  const std::size_t g = sizes.size();
  if (g < 2) fail(Errc::hypothesis_violation, "need at least two groups");
  for (std::size_t i = 0; i + 1 < g; ++i) {
    if (sizes[i] < sizes[i + 1]) {
      fail(Errc::hypothesis_violation, "sizes must be non-increasing");
    }
  }
  if (sizes.back() < 63) {
    fail(Errc::hypothesis_violation, "every group needs at least 63 agents");
  }
  std::vector<long long> floors;
  long long p = 0;
  for (std::uint64_t n : sizes) {
    const long long f =
        static_cast<long long>(std::floor(std::log2(static_cast<double>(n) + 1.0) / 6.0));
    floors.push_back(f);
    p += f;
  }
  long long tail = 0;
  for (std::size_t i = 1; i < g; ++i) tail += floors[i];
  if (floors[0] > tail) {
    fail(Errc::hypothesis_violation,
         "the largest group's term must not exceed the sum of the others");
  }
  GenericLbParams params;
  params.p = static_cast<int>(p);
  params.m = static_cast<int>(2 * p);
  params.sizes = sizes;
  for (std::size_t i = 0; i < g; ++i) {
    params.t.push_back(static_cast<int>(2 * floors[i]));
    params.modes.push_back(GroupMode::covering);
  }
  return params;
}

GenericLbParams lb2_params(const std::vector<std::uint64_t>& sizes) {
  if (sizes.size() < 2) fail(Errc::hypothesis_violation, "need at least two groups");
  // beta_1 >= 1000 requires n_1 + 1 >= ((n_2+1)...(n_g+1))^1000 >= 2^1000,
  // far beyond any materializable group; the symbolic calculator covers
  // parameter inspection instead.
  fail(Errc::hypothesis_violation,
       "the unbalanced-regime hypothesis (beta_1 >= 1000) cannot hold for materializable "
       "group sizes; use the symbolic calculator");
}

SymbolicParams lb2_symbolic(const std::vector<double>& log_sizes) {
  if (log_sizes.size() < 2) fail(Errc::hypothesis_violation, "need at least two groups");
  double tail = 0;
  for (std::size_t i = 1; i < log_sizes.size(); ++i) tail += log_sizes[i];
  if (tail <= 0) fail(Errc::hypothesis_violation, "later groups must be non-empty");
  const double beta1 = log_sizes[0] / tail;
  if (beta1 < 1000.0) {
    fail(Errc::hypothesis_violation, "beta_1 = " + std::to_string(beta1) + " < 1000");
  }
  SymbolicParams out;
  out.p = static_cast<long long>(std::floor(log_sizes[0] / (10.0 * std::log2(beta1))));
  if (out.p < 1) {
    out.trivial_bound = true;
    return out;
  }
  const double items_per_part = std::floor(std::exp2(log_sizes[0] / out.p) / std::exp(1.0));
  out.m = items_per_part * static_cast<double>(out.p);
  out.t.push_back(out.m - static_cast<double>(out.p));  // dominant group, covering
  for (std::size_t i = 1; i < log_sizes.size(); ++i) {
    const double beta_i = log_sizes[i] / tail;
    out.t.push_back(std::ceil(beta_i * static_cast<double>(out.p)));
  }
  return out;
}

GenericLbParams lb3_params(std::uint64_t n1, int g) {
  if (g < 2) fail(Errc::hypothesis_violation, "need at least two groups");
  // log2(n1+1) <= 64 for any representable size, never >= 1000(g-1)
  (void)n1;
  fail(Errc::hypothesis_violation,
       "needs log2(n_1+1) >= 1000(g-1), beyond materializable sizes; use the symbolic "
       "calculator");
}

SymbolicParams lb3_symbolic(double log_n1, int g) {
  if (g < 2) fail(Errc::hypothesis_violation, "need at least two groups");
  if (log_n1 < 1000.0 * (g - 1)) {
    fail(Errc::hypothesis_violation, "needs log2(n_1+1) >= 1000(g-1)");
  }
  SymbolicParams out;
  out.p = static_cast<long long>(std::floor(log_n1 / (10.0 * std::log2(log_n1 / (g - 1)))));
  if (out.p <= g) {
    // the group-count floor already gives p >= g
    out.trivial_bound = true;
    return out;
  }
  const double per_group = std::ceil(static_cast<double>(out.p) / (g - 1) + 1.0);
  out.m = per_group * static_cast<double>(out.p);
  out.t.push_back(out.m - static_cast<double>(out.p));  // covering
  const double t_rest = std::ceil(static_cast<double>(out.p) / (g - 1));
  // identical groups: t_i = ceil(p/(g-1)) coincides with floor(m/p) - 1
  for (int i = 1; i < g; ++i) out.t.push_back(t_rest);
  return out;
}

GeneratedInstance identical_items_instance(int g) {
  if (g < 2) fail(Errc::condition_violation, "need at least two groups");
  std::vector<std::vector<UtilityVector>> groups(
      g, std::vector<UtilityVector>(1, UtilityVector(g - 1, Rational(1))));
  GeneratedInstance out;
  out.instance = validate_instance(g - 1, std::move(groups));
  out.certificate.family = "identical";
  out.certificate.p = g - 1;
  out.certificate.checked = false;
  out.certificate.note = "g=" + std::to_string(g) + " identical items m=" + std::to_string(g - 1);
  return out;
}

Instance footnote_instance() {
  const Rational one(1);
  const Rational zero(0);
  std::vector<UtilityVector> group = {
      {one, one, zero},
      {one, zero, one},
      {zero, one, one},
  };
  return validate_instance(3, {group, group});
}

GenericLbParams equal_two_group_params(std::uint64_t n_prime) {
  if (n_prime < 4) {
    fail(Errc::trivial_regime, "the equal-size family needs n' >= 4");
  }
  const int p = 1 + static_cast<int>(std::floor(std::log2(static_cast<double>(n_prime)) / 2.0));
  GenericLbParams params;
  params.p = p;
  params.m = 2 * (p - 1) + 1;
  params.t = {p - 1, p - 1};
  params.sizes = {n_prime, n_prime};
  params.modes = {GroupMode::covering, GroupMode::covering};
  return params;
}

std::string serialize_certificate(const Certificate& cert) {
  nlohmann::ordered_json doc;
  doc["family"] = cert.family;
  doc["claim"] = "no MMS^p allocation exists for p = " + std::to_string(cert.p);
  doc["p"] = cert.p;
  doc["checked"] = cert.checked;
  doc["note"] = cert.note;
  return doc.dump(2) + "\n";
}

}  // namespace groupmms
