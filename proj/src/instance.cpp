#include "groupmms/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "groupmms/errors.hpp"
#include "groupmms/rng.hpp"

namespace groupmms {

int Instance::agent_count() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

std::vector<std::uint64_t> Instance::sizes() const {
  std::vector<std::uint64_t> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(g.size());
  return out;
}

Instance validate_instance(int m, std::vector<std::vector<UtilityVector>> groups) {
  std::vector<std::string> problems;
  Errc first = Errc::parse_error;
  auto note = [&](Errc code, const std::string& where) {
    if (problems.empty()) first = code;
    problems.push_back(std::string(errc_name(code)) + ": " + where);
  };
  if (m < 1) note(Errc::length_mismatch, "item count must be positive, got " + std::to_string(m));
  if (groups.empty()) note(Errc::empty_group, "instance has no groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) {
      note(Errc::empty_group, "group " + std::to_string(i + 1) + " has no agents");
      continue;
    }
    for (std::size_t j = 0; j < groups[i].size(); ++j) {
      const auto& u = groups[i][j];
      const std::string who = "agent (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (static_cast<int>(u.size()) != m) {
        note(Errc::length_mismatch,
             who + " has " + std::to_string(u.size()) + " utilities, expected " + std::to_string(m));
      }
      for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] < Rational(0)) {
          note(Errc::negative_utility,
               who + " item " + std::to_string(k + 1) + " = " + format_rational(u[k]));
        }
      }
    }
  }
  if (!problems.empty()) {
    std::string all;
    for (const auto& p : problems) {
      if (!all.empty()) all += "; ";
      all += p;
    }
    throw DomainError(first, all);
  }
  Instance inst;
  inst.m = m;
  inst.groups = std::move(groups);
  return inst;
}

Instance drop_agent(const Instance& inst, int group, int agent) {
  if (group < 0 || group >= inst.group_count()) throw std::out_of_range("group index");
  if (agent < 0 || agent >= inst.group_size(group)) throw std::out_of_range("agent index");
  if (inst.group_size(group) < 2) {
    fail(Errc::last_agent, "group " + std::to_string(group + 1) + " would become empty");
  }
  Instance out = inst;
  out.groups[group].erase(out.groups[group].begin() + agent);
  return out;
}

Instance drop_group(const Instance& inst, int group) {
  if (group < 0 || group >= inst.group_count()) throw std::out_of_range("group index");
  if (inst.group_count() < 2) fail(Errc::last_group, "instance has a single group");
  Instance out = inst;
  out.groups.erase(out.groups.begin() + group);
  return out;
}

std::string serialize_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["m"] = inst.m;
  auto groups = nlohmann::ordered_json::array();
  for (const auto& group : inst.groups) {
    auto jg = nlohmann::ordered_json::array();
    for (const auto& agent : group) {
      auto ja = nlohmann::ordered_json::array();
      for (const auto& u : agent) ja.push_back(format_rational(u));
      jg.push_back(std::move(ja));
    }
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);
  return doc.dump(2) + "\n";
}

Instance deserialize_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, std::string("instance document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("groups")) {
    fail(Errc::parse_error, "instance document needs fields 'm' and 'groups'");
  }
  if (!doc["m"].is_number_integer()) fail(Errc::parse_error, "'m' must be an integer");
  const int m = doc["m"].get<int>();
  if (!doc["groups"].is_array()) fail(Errc::parse_error, "'groups' must be an array");
  std::vector<std::vector<UtilityVector>> groups;
  for (std::size_t i = 0; i < doc["groups"].size(); ++i) {
    const auto& jg = doc["groups"][i];
    if (!jg.is_array()) fail(Errc::parse_error, "groups[" + std::to_string(i) + "] must be an array");
    std::vector<UtilityVector> group;
    for (std::size_t j = 0; j < jg.size(); ++j) {
      const auto& ja = jg[j];
      if (!ja.is_array()) {
        fail(Errc::parse_error,
             "groups[" + std::to_string(i) + "][" + std::to_string(j) + "] must be an array");
      }
      UtilityVector u;
      for (std::size_t k = 0; k < ja.size(); ++k) {
        const auto& cell = ja[k];
        if (cell.is_number_integer()) {
          u.emplace_back(BigInt(cell.get<long long>()), BigInt(1));
        } else if (cell.is_string()) {
          u.push_back(parse_rational(cell.get<std::string>()));
        } else {
          fail(Errc::parse_error, "utility at groups[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "][" + std::to_string(k) +
                                      "] must be a string or integer");
        }
      }
      group.push_back(std::move(u));
    }
    groups.push_back(std::move(group));
  }
  return validate_instance(m, std::move(groups));
}

std::string serialize_allocation(const Allocation& alloc) {
  nlohmann::ordered_json doc;
  auto bundles = nlohmann::ordered_json::array();
  for (const auto& b : alloc.bundles) {
    auto jb = nlohmann::ordered_json::array();
    for (int item : b) jb.push_back(item + 1);
    bundles.push_back(std::move(jb));
  }
  doc["bundles"] = std::move(bundles);
  return doc.dump(2) + "\n";
}

Allocation deserialize_allocation(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, std::string("allocation document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("bundles") || !doc["bundles"].is_array()) {
    fail(Errc::parse_error, "allocation document needs a 'bundles' array");
  }
  Allocation alloc;
  for (const auto& jb : doc["bundles"]) {
    if (!jb.is_array()) fail(Errc::parse_error, "each bundle must be an array of 1-based ids");
    Bundle b;
    for (const auto& cell : jb) {
      if (!cell.is_number_integer()) fail(Errc::parse_error, "bundle items must be integers");
      const int id = cell.get<int>();
      if (id < 1) fail(Errc::parse_error, "item ids are 1-based, got " + std::to_string(id));
      b.push_back(id - 1);
    }
    std::sort(b.begin(), b.end());
    alloc.bundles.push_back(std::move(b));
  }
  return alloc;
}

bool is_partition(const Allocation& alloc, int m) {
  std::vector<int> seen(m, 0);
  for (const auto& b : alloc.bundles) {
    for (int item : b) {
      if (item < 0 || item >= m) return false;
      if (seen[item]++) return false;
    }
  }
  for (int c : seen) {
    if (c != 1) return false;
  }
  return true;
}

Bundle all_items(int m) {
  Bundle b(m);
  std::iota(b.begin(), b.end(), 0);
  return b;
}

Rational utility(const UtilityVector& u, const Bundle& items) {
  Rational sum(0);
  for (int item : items) sum += u.at(item);
  return sum;
}

std::vector<double> beta_profile(const std::vector<std::uint64_t>& sizes) {
  if (sizes.size() < 2) fail(Errc::condition_violation, "beta profile needs at least two groups");
  double denom = 0.0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    denom += std::log2(static_cast<double>(sizes[i]) + 1.0);
  }
  std::vector<double> beta;
  beta.reserve(sizes.size());
  for (std::uint64_t n : sizes) beta.push_back(std::log2(static_cast<double>(n) + 1.0) / denom);
  return beta;
}

Instance uniform_instance(const std::vector<int>& sizes, int m, int umin, int umax,
                          std::uint64_t seed) {
  if (umin < 0 || umax < umin) fail(Errc::negative_utility, "utility range must be non-negative");
  SplitMix64 rng(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(umax - umin) + 1;
  std::vector<std::vector<UtilityVector>> groups;
  for (int n : sizes) {
    std::vector<UtilityVector> group;
    for (int j = 0; j < n; ++j) {
      UtilityVector u;
      u.reserve(m);
      for (int k = 0; k < m; ++k) {
        u.emplace_back(BigInt(umin + static_cast<long long>(bounded_draw(rng, span))), BigInt(1));
      }
      group.push_back(std::move(u));
    }
    groups.push_back(std::move(group));
  }
  return validate_instance(m, std::move(groups));
}

}  // namespace groupmms
