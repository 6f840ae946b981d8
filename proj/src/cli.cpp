#include "groupmms/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "groupmms/adversarial.hpp"
#include "groupmms/covering.hpp"
#include "groupmms/errors.hpp"
#include "groupmms/group_alloc.hpp"
#include "groupmms/instance.hpp"
#include "groupmms/mms.hpp"
#include "groupmms/oracle.hpp"
#include "groupmms/rng.hpp"
#include "groupmms/two_group.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupmms {

namespace {

std::string read_text(const std::string& path, std::istream& fallback_stdin) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << fallback_stdin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) fail(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

Instance load_instance(const std::string& path) {
  return deserialize_instance(read_text(path, std::cin));
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) fail(Errc::parse_error, "cannot write '" + path + "'");
  file << text;
}

AgentId parse_agent(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) fail(Errc::parse_error, "agent must be 'group,agent' (1-based)");
  try {
    const int g = std::stoi(text.substr(0, comma));
    const int a = std::stoi(text.substr(comma + 1));
    if (g < 1 || a < 1) fail(Errc::parse_error, "agent ids are 1-based");
    return AgentId{g - 1, a - 1};
  } catch (const std::invalid_argument&) {
    fail(Errc::parse_error, "agent must be 'group,agent' (1-based)");
  } catch (const std::out_of_range&) {
    fail(Errc::parse_error, "agent id out of range");
  }
}

void check_agent(const Instance& inst, AgentId id) {
  if (id.group >= inst.group_count() || id.agent >= inst.group_size(id.group)) {
    fail(Errc::parse_error, "agent (" + std::to_string(id.group + 1) + "," +
                                std::to_string(id.agent + 1) + ") does not exist");
  }
}

Bundle parse_items(const std::vector<int>& one_based, int m) {
  Bundle items;
  for (int id : one_based) {
    if (id < 1 || id > m) fail(Errc::parse_error, "item " + std::to_string(id) + " outside 1..m");
    items.push_back(id - 1);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

nlohmann::ordered_json report_json(const RunReport& report, const std::string& algo) {
  nlohmann::ordered_json doc;
  doc["algorithm"] = algo;
  doc["seed"] = report.seed;
  doc["rng"] = report.rng;
  doc["p"] = report.p;
  doc["success"] = report.success;
  if (report.failed == FailTag::none) {
    doc["failed_condition"] = nullptr;
  } else {
    doc["failed_condition"] = fail_tag_name(report.failed);
  }
  auto thresholds = nlohmann::ordered_json::array();
  for (const auto& group : report.thresholds) {
    auto jg = nlohmann::ordered_json::array();
    for (const auto& t : group) jg.push_back(format_rational(t));
    thresholds.push_back(std::move(jg));
  }
  doc["thresholds"] = std::move(thresholds);
  if (report.allocation) {
    auto bundles = nlohmann::ordered_json::array();
    for (const auto& b : report.allocation->bundles) {
      auto jb = nlohmann::ordered_json::array();
      for (int item : b) jb.push_back(item + 1);
      bundles.push_back(std::move(jb));
    }
    doc["allocation"] = nlohmann::ordered_json{{"bundles", std::move(bundles)}};
  } else {
    doc["allocation"] = nullptr;
  }
  return doc;
}

std::pair<double, double> wilson95(int successes, int trials) {
  const double z = 1.959963984540054;
  const double n = trials;
  const double phat = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string format_fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

// ---- simulate ----

struct SimulateOptions {
  std::string algo;
  std::string instance_path;
  std::string family;  // "uniform" or empty
  std::vector<int> sizes;
  int m = 0;
  int umin = 0;
  int umax = 1000;
  int trials = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string csv_path;
  std::string c1 = "80";
  std::string c2 = "320000";
  std::string inner_c1 = "80";
  int retries = 10;
  int p = 0;
  int search_budget = 64;
};

struct TrialResult {
  std::uint64_t seed = 0;
  bool success = false;
  std::string failed;
  double ms = 0.0;
};

TrialResult run_trial(const SimulateOptions& opt, const Instance* fixed, std::uint64_t trial_seed) {
  TrialResult row;
  row.seed = trial_seed;
  const auto start = std::chrono::steady_clock::now();
  Instance generated;
  const Instance* inst = fixed;
  if (!inst) {
    generated = uniform_instance(opt.sizes, opt.m, opt.umin, opt.umax, derive_seed(trial_seed, 1));
    inst = &generated;
  }
  if (opt.algo == "ub1") {
    Ub1Config cfg;
    cfg.c1 = parse_rational(opt.c1);
    cfg.seed = trial_seed;
    const RunReport report = allocate_ub1(*inst, cfg);
    row.success = report.success;
    row.failed = fail_tag_name(report.failed);
  } else if (opt.algo == "ub2") {
    Ub2Config cfg;
    cfg.c2 = parse_rational(opt.c2);
    cfg.inner_c1 = parse_rational(opt.inner_c1);
    cfg.retries = opt.retries;
    cfg.seed = trial_seed;
    const RunReport report = allocate_ub2(*inst, cfg);
    row.success = report.success;
    row.failed = fail_tag_name(report.failed);
  } else {
    const auto found =
        random_allocation_search(*inst, opt.p, opt.search_budget, trial_seed, kSubsetEnumLimit);
    row.success = found.has_value();
    row.failed = found ? "" : "NOT_FOUND";
  }
  const auto stop = std::chrono::steady_clock::now();
  row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  Instance fixed;
  const Instance* fixed_ptr = nullptr;
  if (!opt.instance_path.empty()) {
    fixed = load_instance(opt.instance_path);
    fixed_ptr = &fixed;
  } else if (opt.family != "uniform") {
    fail(Errc::parse_error, "need --instance or --family uniform");
  } else if (opt.sizes.empty() || opt.m < 1) {
    fail(Errc::parse_error, "--family uniform needs --sizes and --m");
  }
  if (opt.algo == "random-search" && opt.p < 1) {
    fail(Errc::parse_error, "random-search needs --p");
  }

  std::vector<TrialResult> rows(opt.trials);
  std::exception_ptr first_error;
#ifdef _OPENMP
  const int jobs = std::max(1, opt.jobs);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
#endif
  for (int t = 0; t < opt.trials; ++t) {
    try {
      rows[t] = run_trial(opt, fixed_ptr, opt.seed + static_cast<std::uint64_t>(t));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!first_error) first_error = std::current_exception();
    }
  }

  std::ostringstream csv;
  csv << "trial,seed,success,failed_condition,ms\n";
  int successes = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const TrialResult& row = rows[t];
    successes += row.success ? 1 : 0;
    csv << t << ',' << row.seed << ',' << (row.success ? 1 : 0) << ',' << row.failed << ','
        << format_fixed(row.ms, 3) << '\n';
  }
  write_text(opt.csv_path, csv.str(), out);
  if (first_error) {
    err << "aborted by a trial error; partial CSV flushed\n";
    std::rethrow_exception(first_error);
  }

  const double rate = opt.trials > 0 ? static_cast<double>(successes) / opt.trials : 0.0;
  const auto [low, high] = wilson95(successes, std::max(1, opt.trials));
  out << "trials: " << opt.trials << "\n";
  out << "successes: " << successes << "\n";
  out << "rate: " << format_fixed(rate, 6) << "\n";
  out << "wilson95: " << format_fixed(low, 6) << " " << format_fixed(high, 6) << "\n";
  return 0;
}

// ---- gen ----

struct GenOptions {
  std::string family;
  std::vector<std::uint64_t> sizes;
  int m = 0;
  int p = 0;
  std::vector<int> t;
  std::string modes;
  int g = 0;
  std::uint64_t nprime = 0;
  std::vector<double> logs;
  double log1 = 0.0;
  std::string out_path;
  bool check = false;
};

nlohmann::ordered_json symbolic_json(const std::string& family, const SymbolicParams& params) {
  nlohmann::ordered_json doc;
  doc["family"] = family;
  doc["trivial_bound"] = params.trivial_bound;
  doc["p"] = params.p;
  doc["m"] = params.m;
  doc["t"] = params.t;
  return doc;
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  // symbolic calculators report parameters instead of materializing agents
  if (opt.family == "lb2" && !opt.logs.empty()) {
    out << symbolic_json("lb2", lb2_symbolic(opt.logs)).dump(2) << "\n";
    return 0;
  }
  if (opt.family == "lb3" && opt.log1 > 0.0) {
    out << symbolic_json("lb3", lb3_symbolic(opt.log1, opt.g)).dump(2) << "\n";
    return 0;
  }

  if (opt.family == "footnote") {
    write_text(opt.out_path, serialize_instance(footnote_instance()), out);
    return 0;
  }

  GeneratedInstance generated;
  if (opt.family == "generic") {
    GenericLbParams params;
    params.m = opt.m;
    params.p = opt.p;
    params.t = opt.t;
    params.sizes = opt.sizes;
    if (opt.modes.empty()) {
      for (std::size_t i = 0; i < params.sizes.size(); ++i) {
        const bool identical_fits =
            params.p >= 1 && params.t.size() == params.sizes.size() &&
            params.t[i] <= params.m / params.p - 1;
        params.modes.push_back(identical_fits ? GroupMode::identical : GroupMode::covering);
      }
    } else {
      std::stringstream stream(opt.modes);
      std::string token;
      while (std::getline(stream, token, ',')) {
        if (token == "i" || token == "identical") {
          params.modes.push_back(GroupMode::identical);
        } else if (token == "c" || token == "covering") {
          params.modes.push_back(GroupMode::covering);
        } else {
          fail(Errc::parse_error, "mode must be i or c, got '" + token + "'");
        }
      }
    }
    generated = materialize(params, "generic");
  } else if (opt.family == "lb1") {
    generated = materialize(lb1_params(opt.sizes), "lb1");
  } else if (opt.family == "lb2") {
    generated = materialize(lb2_params(opt.sizes), "lb2");
  } else if (opt.family == "lb3") {
    const std::uint64_t n1 = opt.nprime ? opt.nprime : (opt.sizes.empty() ? 0 : opt.sizes[0]);
    if (n1 == 0 || opt.g < 2) {
      fail(Errc::parse_error, "lb3 needs --n1 and --g (or --log1 for the calculator)");
    }
    generated = materialize(lb3_params(n1, opt.g), "lb3");
  } else if (opt.family == "identical") {
    generated = identical_items_instance(opt.g);
  } else if (opt.family == "equal2") {
    generated = materialize(equal_two_group_params(opt.nprime), "equal2");
  } else {
    fail(Errc::parse_error, "unknown family '" + opt.family + "'");
  }

  if (opt.check) {
    try {
      if (exists_mms_allocation(generated.instance, generated.certificate.p)) {
        err << "oracle found an MMS^" << generated.certificate.p
            << " allocation; the claim does not hold\n";
        return 1;
      }
      generated.certificate.checked = true;
      err << "oracle: no MMS^" << generated.certificate.p << " allocation (checked)\n";
    } catch (const DomainError& e) {
      if (e.code() != Errc::too_large) throw;
      err << "claimed by the construction, unverified at this size\n";
    }
  }

  write_text(opt.out_path, serialize_instance(generated.instance), out);
  const std::string cert = serialize_certificate(generated.certificate);
  if (!opt.out_path.empty() && opt.out_path != "-") {
    write_text(opt.out_path + ".cert.json", cert, out);
  } else {
    err << cert;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordinal maximin-share allocation toolkit for groups of agents"};
  app.require_subcommand(1);

  // mms
  auto* mms_cmd = app.add_subcommand("mms", "maximin share of one agent");
  std::string mms_instance, mms_agent;
  int mms_p = 0;
  bool mms_exact = false, mms_lpt = false, mms_witness = false;
  int mms_limit = kDefaultExactLimit;
  std::vector<int> mms_items;
  mms_cmd->add_option("--instance", mms_instance, "instance document (path or -)")->required();
  mms_cmd->add_option("--agent", mms_agent, "agent as group,agent (1-based)")->required();
  mms_cmd->add_option("--p", mms_p, "number of parts")->required();
  mms_cmd->add_flag("--exact", mms_exact, "exhaustive solver");
  mms_cmd->add_flag("--lpt", mms_lpt, "greedy 3/4-approximation");
  mms_cmd->add_flag("--witness", mms_witness, "print the witness partition");
  mms_cmd->add_option("--limit", mms_limit, "exhaustive size limit");
  mms_cmd->add_option("--items", mms_items, "restrict to these 1-based items")->delimiter(',');

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive allocation feasibility");
  std::string oracle_instance;
  int oracle_p = 0;
  bool oracle_min = false;
  std::int64_t oracle_budget = OracleBudget{}.max_assignments;
  int oracle_limit = kDefaultExactLimit;
  oracle_cmd->add_option("--instance", oracle_instance)->required();
  oracle_cmd->add_option("--p", oracle_p, "test feasibility at this p");
  oracle_cmd->add_flag("--min-p", oracle_min, "smallest feasible p");
  oracle_cmd->add_option("--budget", oracle_budget, "assignment budget");
  oracle_cmd->add_option("--limit", oracle_limit, "exhaustive share limit");

  // bound two-group
  auto* bound_cmd = app.add_subcommand("bound", "worst-case p bounds");
  auto* two_cmd = bound_cmd->add_subcommand("two-group", "two-group upper bound");
  std::uint64_t bound_n1 = 0, bound_n2 = 0;
  std::string bound_method = "minimal";
  two_cmd->add_option("--n1", bound_n1)->required();
  two_cmd->add_option("--n2", bound_n2)->required();
  two_cmd->add_option("--method", bound_method)
      ->check(CLI::IsMember({"minimal", "corollary"}));

  // design
  auto* design_cmd = app.add_subcommand("design", "covering designs");
  int design_m = 0, design_s = 0, design_t = 0;
  std::string design_method = "greedy";
  std::int64_t design_budget = kDefaultCoverBudget;
  design_cmd->add_option("--m", design_m)->required();
  design_cmd->add_option("--s", design_s)->required();
  design_cmd->add_option("--t", design_t)->required();
  design_cmd->add_option("--method", design_method)
      ->check(CLI::IsMember({"trivial", "greedy", "exhaustive"}));
  design_cmd->add_option("--budget", design_budget);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "hard instance generators");
  GenOptions gen;
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"generic", "lb1", "lb2", "lb3", "identical", "footnote", "equal2"}));
  gen_cmd->add_option("--sizes", gen.sizes)->delimiter(',');
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--t", gen.t)->delimiter(',');
  gen_cmd->add_option("--modes", gen.modes, "per-group i/c list");
  gen_cmd->add_option("--g", gen.g);
  gen_cmd->add_option("--nprime", gen.nprime);
  gen_cmd->add_option("--n1", gen.nprime, "alias used by lb3");
  gen_cmd->add_option("--logs", gen.logs, "log2(n_i+1) list for the lb2 calculator")
      ->delimiter(',');
  gen_cmd->add_option("--log1", gen.log1, "log2(n_1+1) for the lb3 calculator");
  gen_cmd->add_option("--out", gen.out_path, "write the instance here (+ .cert.json sidecar)");
  gen_cmd->add_flag("--check", gen.check, "confirm the claim with the oracle");

  // allocate
  auto* alloc_cmd = app.add_subcommand("allocate", "randomized group allocation");
  std::string alloc_algo, alloc_instance, alloc_c1 = "80", alloc_c2 = "320000",
                          alloc_inner = "80";
  std::uint64_t alloc_seed = 0;
  int alloc_retries = 10, alloc_limit = kDefaultExactLimit;
  bool alloc_exact = false, alloc_trace = false;
  alloc_cmd->add_option("--algo", alloc_algo)->required()->check(CLI::IsMember({"ub1", "ub2"}));
  alloc_cmd->add_option("--instance", alloc_instance)->required();
  alloc_cmd->add_option("--seed", alloc_seed, "RNG seed (required for reproducibility)")
      ->required();
  alloc_cmd->add_option("--c1", alloc_c1, "single-stage constant (rational)");
  alloc_cmd->add_option("--c2", alloc_c2, "two-stage constant (rational)");
  alloc_cmd->add_option("--inner-c1", alloc_inner, "constant for nested runs");
  alloc_cmd->add_option("--retries", alloc_retries, "nested run attempts");
  alloc_cmd->add_option("--limit", alloc_limit);
  alloc_cmd->add_flag("--exact-thresholds", alloc_exact, "exact thresholds instead of LPT");
  alloc_cmd->add_flag("--trace-bags", alloc_trace, "log each closed bag to stderr");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check an allocation");
  std::string verify_instance, verify_allocation, verify_mode = "exact";
  int verify_p = 0, verify_limit = kDefaultExactLimit;
  verify_cmd->add_option("--instance", verify_instance)->required();
  verify_cmd->add_option("--allocation", verify_allocation)->required();
  verify_cmd->add_option("--p", verify_p)->required();
  verify_cmd->add_option("--mode", verify_mode)->check(CLI::IsMember({"exact", "sufficient"}));
  verify_cmd->add_option("--limit", verify_limit);

  // search
  auto* search_cmd = app.add_subcommand("search", "random allocation search");
  std::string search_instance;
  int search_p = 0, search_trials = 0, search_limit = kDefaultExactLimit;
  std::uint64_t search_seed = 0;
  search_cmd->add_option("--instance", search_instance)->required();
  search_cmd->add_option("--p", search_p)->required();
  search_cmd->add_option("--trials", search_trials)->required();
  search_cmd->add_option("--seed", search_seed)->required();
  search_cmd->add_option("--limit", search_limit);

  // fraction
  auto* fraction_cmd = app.add_subcommand("fraction", "exact success fractions");
  std::string fraction_instance, fraction_agent;
  int fraction_p = 0;
  bool fraction_serial = false;
  fraction_cmd->add_option("--instance", fraction_instance)->required();
  fraction_cmd->add_option("--p", fraction_p)->required();
  fraction_cmd->add_option("--agent", fraction_agent,
                           "subset fraction for this agent instead of the allocation fraction");
  fraction_cmd->add_flag("--serial", fraction_serial, "run the serial reference kernel");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo harness");
  SimulateOptions sim;
  sim_cmd->add_option("--algo", sim.algo)
      ->required()
      ->check(CLI::IsMember({"ub1", "ub2", "random-search"}));
  sim_cmd->add_option("--instance", sim.instance_path);
  sim_cmd->add_option("--family", sim.family)->check(CLI::IsMember({"uniform"}));
  sim_cmd->add_option("--sizes", sim.sizes)->delimiter(',');
  sim_cmd->add_option("--m", sim.m);
  sim_cmd->add_option("--umin", sim.umin);
  sim_cmd->add_option("--umax", sim.umax);
  sim_cmd->add_option("--trials", sim.trials)->required();
  sim_cmd->add_option("--seed", sim.seed)->required();
  sim_cmd->add_option("--jobs", sim.jobs, "parallel trial workers");
  sim_cmd->add_option("--csv", sim.csv_path, "write rows here instead of stdout");
  sim_cmd->add_option("--c1", sim.c1);
  sim_cmd->add_option("--c2", sim.c2);
  sim_cmd->add_option("--inner-c1", sim.inner_c1);
  sim_cmd->add_option("--retries", sim.retries);
  sim_cmd->add_option("--p", sim.p, "p for random-search");
  sim_cmd->add_option("--search-budget", sim.search_budget, "samples per random-search trial");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*mms_cmd) {
      const Instance inst = load_instance(mms_instance);
      const AgentId id = parse_agent(mms_agent);
      check_agent(inst, id);
      if (mms_exact && mms_lpt) fail(Errc::parse_error, "pick one of --exact / --lpt");
      const Bundle items =
          mms_items.empty() ? all_items(inst.m) : parse_items(mms_items, inst.m);
      const UtilityVector& u = inst.utilities(id);
      const MmsResult result =
          mms_lpt ? lpt_mms(u, mms_p, items) : exact_mms(u, mms_p, items, mms_limit);
      out << format_rational(result.value) << "\n";
      if (mms_witness) {
        Allocation witness;
        witness.bundles = result.witness;
        out << serialize_allocation(witness);
      }
      return 0;
    }
    if (*oracle_cmd) {
      const Instance inst = load_instance(oracle_instance);
      OracleBudget budget;
      budget.max_assignments = oracle_budget;
      budget.exact_limit = oracle_limit;
      if (oracle_min) {
        out << min_feasible_p(inst, budget) << "\n";
        return 0;
      }
      if (oracle_p < 1) fail(Errc::parse_error, "need --p or --min-p");
      if (const auto witness = exists_mms_allocation(inst, oracle_p, budget)) {
        out << serialize_allocation(*witness);
      } else {
        out << "INFEASIBLE\n";
        err << "no assignment of " << inst.m << " items to " << inst.group_count()
            << " groups satisfies every agent at p = " << oracle_p << "\n";
      }
      return 0;
    }
    if (*two_cmd) {
      if (bound_method == "corollary") {
        out << corollary_p(bound_n1, bound_n2) << "\n";
      } else {
        out << two_group_p(bound_n1, bound_n2).p << "\n";
      }
      return 0;
    }
    if (*design_cmd) {
      CoveringDesign design;
      if (design_method == "trivial") {
        design = trivial_design(design_m, design_s, design_budget);
        design.t = design_t;
        if (design_t > design_s) fail(Errc::condition_violation, "need t <= s");
      } else if (design_method == "greedy") {
        design = greedy_design(design_m, design_s, design_t, design_budget);
      } else {
        design = min_design_exhaustive(design_m, design_s, design_t);
      }
      out << serialize_design(design);
      return 0;
    }
    if (*gen_cmd) {
      return cmd_gen(gen, out, err);
    }
    if (*alloc_cmd) {
      const Instance inst = load_instance(alloc_instance);
      RunReport report;
      if (alloc_algo == "ub1") {
        Ub1Config cfg;
        cfg.c1 = parse_rational(alloc_c1);
        cfg.seed = alloc_seed;
        cfg.exact_thresholds = alloc_exact;
        cfg.exact_limit = alloc_limit;
        if (alloc_trace) {
          cfg.trace = [&err](AgentId id, const Bundle& bag, const Rational& value) {
            err << "bag -> (" << id.group + 1 << "," << id.agent + 1 << ") value "
                << format_rational(value) << " items";
            for (int item : bag) err << " " << item + 1;
            err << "\n";
          };
        }
        report = allocate_ub1(inst, cfg);
      } else {
        Ub2Config cfg;
        cfg.c2 = parse_rational(alloc_c2);
        cfg.inner_c1 = parse_rational(alloc_inner);
        cfg.retries = alloc_retries;
        cfg.seed = alloc_seed;
        cfg.exact_thresholds = alloc_exact;
        cfg.exact_limit = alloc_limit;
        report = allocate_ub2(inst, cfg);
      }
      out << report_json(report, alloc_algo).dump(2) << "\n";
      return 0;
    }
    if (*verify_cmd) {
      const Instance inst = load_instance(verify_instance);
      const Allocation alloc = deserialize_allocation(read_text(verify_allocation, std::cin));
      std::vector<std::vector<bool>> ok;
      if (verify_mode == "exact") {
        ok = verify_exact(inst, alloc, verify_p, verify_limit);
      } else {
        std::vector<std::vector<Rational>> thresholds;
        for (int i = 0; i < inst.group_count(); ++i) {
          std::vector<Rational> ts;
          for (int j = 0; j < inst.group_size(i); ++j) {
            ts.push_back(lpt_mms(inst.groups[i][j], verify_p, all_items(inst.m)).value);
          }
          thresholds.push_back(std::move(ts));
        }
        ok = verify_sufficient(inst, alloc, thresholds);
      }
      nlohmann::ordered_json doc;
      doc["mode"] = verify_mode;
      doc["p"] = verify_p;
      bool all = true;
      auto per_agent = nlohmann::ordered_json::array();
      for (const auto& group : ok) {
        auto jg = nlohmann::ordered_json::array();
        for (bool b : group) {
          jg.push_back(b);
          all = all && b;
        }
        per_agent.push_back(std::move(jg));
      }
      doc["per_agent"] = std::move(per_agent);
      doc["all"] = all;
      out << doc.dump(2) << "\n";
      return 0;
    }
    if (*search_cmd) {
      const Instance inst = load_instance(search_instance);
      const auto found =
          random_allocation_search(inst, search_p, search_trials, search_seed, search_limit);
      if (found) {
        out << serialize_allocation(*found);
      } else {
        out << "NONE\n";
      }
      return 0;
    }
    if (*fraction_cmd) {
      const Instance inst = load_instance(fraction_instance);
      if (!fraction_agent.empty()) {
        const AgentId id = parse_agent(fraction_agent);
        check_agent(inst, id);
        const Rational f = fraction_serial
                               ? subset_success_fraction_serial(inst.utilities(id), fraction_p)
                               : subset_success_fraction(inst.utilities(id), fraction_p);
        out << format_rational(f) << "\n";
      } else {
        const Rational f = fraction_serial ? exact_allocation_fraction_serial(inst, fraction_p)
                                           : exact_allocation_fraction(inst, fraction_p);
        out << format_rational(f) << "\n";
      }
      return 0;
    }
    if (*sim_cmd) {
      return cmd_simulate(sim, out, err);
    }
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand selected\n";
  return 2;
}

}  // namespace groupmms
