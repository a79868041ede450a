// Command-line driver: solve / verify / prefix / generate.
//
// Reports are a single JSON document on stdout and are byte-reproducible for
// a fixed seed; wall-clock timings and warnings go to stderr. Exit codes:
// 0 success (verify: feasible), 1 verify: infeasible, 2 bad input or
// refused resource bounds, 3 violated guarantee or oracle mismatch.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <knapq/engines.hpp>
#include <knapq/errors.hpp>
#include <knapq/instance.hpp>
#include <knapq/pipeline.hpp>
#include <knapq/prefix.hpp>
#include <knapq/random_gen.hpp>
#include <knapq/reductions.hpp>
#include <knapq/verify.hpp>

using nlohmann::ordered_json;
using namespace knapq;

namespace {

constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitViolation = 3;

std::string fnv1a_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json ids_json(const ItemSet& set) {
  ordered_json arr = ordered_json::array();
  for (int id : set) arr.push_back(id);
  return arr;
}

ordered_json instance_summary(const Instance& inst, const std::string& path) {
  ordered_json j;
  if (!path.empty()) j["path"] = path;
  j["items"] = inst.n();
  j["nontrivial"] = inst.nontrivial_count();
  j["capacity"] = inst.capacity().str();
  j["digest"] = fnv1a_digest(instance_to_json(inst));
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << "elapsed: " << ms << " ms\n";
  }
};

ItemSet parse_id_list(const std::string& text) {
  std::vector<int> ids;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    ids.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else if (c >= '0' && c <= '9')
      cur.push_back(c);
    else
      throw ParseError("bad id list: '" + text + "'");
  }
  flush();
  return ItemSet::of(std::move(ids));
}

void emit(const ordered_json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write: " + out_path);
    out << text;
  }
}

Rat require_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw ParamError(std::string(flag) + ": expected p/q, got '" + text + "'");
  }
}

// Feasibility of Q by explicit covering constraints over all packings
// (independent of the DP route; used for the verify oracle).
bool feasible_by_enumeration(const Instance& inst, const ItemSet& q,
                             const Rat& beta, const Rat& p_star) {
  bool ok = true;
  for_each_packing(inst, [&](const std::vector<int>& ids) {
    if (!ok) return;
    Rat u = 0;
    for (int id : ids) u += item_upper_after(inst, id, q);
    if (u > beta * p_star) ok = false;
  });
  return ok;
}

int cmd_solve(const std::string& instance_path, const std::string& mode,
              const std::string& epsilon_text, std::uint64_t seed, int workers,
              bool no_oracle, const std::string& out_path) {
  Timer timer;
  InstanceFile file = load_instance_file(instance_path);
  const Instance& inst = file.instance;
  const Rat eps = require_rational(epsilon_text, "--epsilon");

  PipelineParams params;
  params.epsilon = eps;
  params.mode = mode == "poly" ? PipelineMode::polynomial
                               : PipelineMode::pseudopolynomial;
  params.workers = workers;
  PipelineResult res = run_pipeline(inst, params);

  FeasibilityReport check = check_alpha_beta_feasible(
      inst, res.query_set, res.alpha_achieved, res.beta_achieved);

  ordered_json report;
  report["command"] = "solve";
  report["seed"] = seed;
  report["mode"] = mode;
  report["epsilon"] = format_rational(eps);
  report["instance"] = instance_summary(inst, instance_path);
  ordered_json& r = report["result"];
  r["query_set"] = ids_json(res.query_set);
  r["cardinality"] = res.query_set.size();
  r["packing"] = ids_json(res.packing);
  r["threshold"] = format_rational(res.threshold);
  r["alpha"] = format_rational(res.alpha_achieved);
  r["beta"] = format_rational(res.beta_achieved);
  r["l_star"] = res.l_star;
  r["components"]["from_packing"] = ids_json(res.from_packing);
  r["components"]["from_threshold"] = ids_json(res.from_threshold);
  r["components"]["from_prefix"] = ids_json(res.from_prefix);
  report["verification"]["alpha_beta_feasible"] = check.feasible;
  report["verification"]["p_star"] = format_rational(check.p_star);
  report["verification"]["max_upper_after"] =
      format_rational(check.max_upper_after);

  bool violation = !check.feasible;
  if (violation && check.violating_packing)
    report["verification"]["violating_packing"] =
        ids_json(*check.violating_packing);

  if (!no_oracle && inst.nontrivial_count() <= 10) {
    QuerySet q_star = brute_force_optimal_query_set(inst, Rat(1), Rat(1));
    bool ratio_ok = res.query_set.size() <= 2 * q_star.size();
    report["oracle"]["enabled"] = true;
    report["oracle"]["optimal_query_set"] = ids_json(q_star);
    report["oracle"]["optimal_cardinality"] = q_star.size();
    report["oracle"]["within_twice_optimal"] = ratio_ok;
    if (!ratio_ok) violation = true;
  } else {
    report["oracle"]["enabled"] = false;
  }

  emit(report, out_path);
  if (violation) {
    std::cerr << "guarantee violated; see report\n";
    return kExitViolation;
  }
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& query_text,
               const std::string& alpha_text, const std::string& beta_text,
               bool no_oracle, const std::string& out_path) {
  Timer timer;
  InstanceFile file = load_instance_file(instance_path);
  const Instance& inst = file.instance;
  const ItemSet q = parse_id_list(query_text);
  const Rat alpha = require_rational(alpha_text, "--alpha");
  const Rat beta = require_rational(beta_text, "--beta");

  FeasibilityReport rep = check_alpha_beta_feasible(inst, q, alpha, beta);

  ordered_json report;
  report["command"] = "verify";
  report["instance"] = instance_summary(inst, instance_path);
  report["query_set"] = ids_json(q);
  report["alpha"] = format_rational(alpha);
  report["beta"] = format_rational(beta);
  report["feasible"] = rep.feasible;
  report["p_star"] = format_rational(rep.p_star);
  report["max_upper_after"] = format_rational(rep.max_upper_after);
  if (rep.witness_packing)
    report["witness_packing"] = ids_json(*rep.witness_packing);
  if (rep.violating_packing)
    report["violating_packing"] = ids_json(*rep.violating_packing);

  int rc = rep.feasible ? 0 : kExitInfeasible;
  if (!no_oracle && inst.n() <= 10) {
    // condition 2 via raw constraint enumeration, condition 1 via the
    // enumeration engine restricted to queried + trivial items
    bool cond2 = feasible_by_enumeration(inst, q, beta, rep.p_star);
    SolveCaps enum_caps;
    enum_caps.dp_capacity = 0;  // force the enumeration route
    auto inside = solve_knapsack_auto(inst, plain_profits(inst),
                                      q.unite(inst.trivial_ids()), enum_caps);
    bool cond1 = inside && inside->value * alpha >= rep.p_star;
    bool oracle_feasible = cond1 && cond2;
    report["oracle"]["enabled"] = true;
    report["oracle"]["feasible"] = oracle_feasible;
    if (oracle_feasible != rep.feasible) {
      emit(report, out_path);
      std::cerr << "oracle disagrees with the feasibility check\n";
      return kExitViolation;
    }
  } else {
    report["oracle"]["enabled"] = false;
  }
  emit(report, out_path);
  return rc;
}

int cmd_prefix(const std::string& instance_path,
               const std::string& threshold_text, const std::string& mode,
               int workers, bool no_oracle, const std::string& out_path) {
  Timer timer;
  InstanceFile file = load_instance_file(instance_path);
  const Instance& inst = file.instance;
  Rat threshold;
  if (!threshold_text.empty())
    threshold = require_rational(threshold_text, "--threshold");
  else if (file.threshold)
    threshold = *file.threshold;
  else
    throw ParamError("no --threshold given and the instance file has none");

  // reject thresholds below the optimum when an exact engine applies
  if (auto opt = solve_knapsack_auto(inst, plain_profits(inst))) {
    if (threshold < opt->value)
      throw ParamError("threshold " + format_rational(threshold) +
                       " is below the optimal profit " +
                       format_rational(opt->value));
  } else {
    std::cerr << "warning: cannot verify threshold >= optimum on this "
                 "instance (both engine caps exceeded)\n";
  }

  PrefixProblem problem{inst, threshold};
  PrefixOptions opts;
  opts.workers = workers;
  PrefixStats stats;
  opts.stats = &stats;
  const bool poly = mode == "poly";
  QuerySet q = poly ? solve_prefix_lp(problem, opts)
                    : solve_prefix_optimal(problem, opts);
  const Rat bound =
      poly ? relaxed_prefix_bound(inst, threshold) : threshold;
  const Rat achieved = prefix_upper_after(inst, q);

  ordered_json report;
  report["command"] = "prefix";
  report["mode"] = mode;
  report["instance"] = instance_summary(inst, instance_path);
  report["threshold"] = format_rational(threshold);
  report["result"]["query_set"] = ids_json(q);
  report["result"]["cardinality"] = q.size();
  report["result"]["prefix_upper_after"] = format_rational(achieved);
  report["result"]["bound"] = format_rational(bound);
  report["stats"]["guesses"] = stats.guesses;
  report["stats"]["candidates"] = stats.candidates;

  bool violation = achieved > bound;
  if (!no_oracle && inst.nontrivial_count() <= 10 && inst.n() <= 16) {
    QuerySet q_star = brute_force_prefix_opt(inst, threshold);
    report["oracle"]["enabled"] = true;
    report["oracle"]["optimal_cardinality"] = q_star.size();
    bool ok = poly ? q.size() <= q_star.size() : q.size() == q_star.size();
    report["oracle"]["cardinality_ok"] = ok;
    if (!ok) violation = true;
  } else {
    report["oracle"]["enabled"] = false;
  }

  emit(report, out_path);
  if (violation) {
    std::cerr << "guarantee violated; see report\n";
    return kExitViolation;
  }
  return 0;
}

int cmd_generate(const std::string& kind, const std::string& input_path,
                 int n, int max_weight, std::uint64_t seed,
                 const std::string& c_text, const std::string& threshold_text,
                 const std::string& alpha_text, const std::string& beta_text,
                 const std::string& out_path) {
  Timer timer;
  ordered_json report;
  report["command"] = "generate";
  report["kind"] = kind;
  report["seed"] = seed;

  Instance inst;
  std::optional<Rat> threshold;
  if (kind == "random") {
    RandomInstanceParams params;
    params.n = n;
    params.max_weight = max_weight;
    params.seed = seed;
    inst = random_instance(params);
    report["params"]["n"] = n;
    report["params"]["max_weight"] = max_weight;
  } else if (kind == "sscover") {
    if (input_path.empty()) throw ParamError("sscover needs --input");
    SuccinctSetCover ssc = load_sscover_file(input_path);
    ReducedSetCoverInstance red = reduce_sscover(ssc);
    inst = red.instance;
    report["params"]["variables"] = ssc.n_vars;
    report["params"]["formulas"] = ssc.m();
    report["params"]["cover_budget"] = ssc.budget;
    report["construction"]["epsilon"] = format_rational(red.epsilon);
    report["construction"]["y_items"] = ids_json(ItemSet::of(red.y_ids));
    report["construction"]["full_capacity_item"] = red.star_id;
    if (red.covers_all.has_value()) {
      report["construction"]["covers_all_assignments"] = *red.covers_all;
      if (!*red.covers_all)
        std::cerr << "warning: the formula family does not cover all "
                     "assignments\n";
    } else {
      std::cerr << "warning: coverage not verified (too many variables)\n";
    }
  } else if (kind == "subsetsum") {
    if (input_path.empty()) throw ParamError("subsetsum needs --input");
    SubsetSumInstance ss = load_subset_sum_file(input_path);
    Rat c = c_text.empty() ? Rat(1) : require_rational(c_text, "--c");
    SubsetSumReduction red = reduce_subset_sum(ss, c);
    inst = red.problem.instance;
    threshold = red.problem.threshold;
    report["params"]["c"] = format_rational(c);
    report["construction"]["epsilon"] = format_rational(red.epsilon);
    report["construction"]["normal_items"] = ids_json(red.normal_ids);
    report["construction"]["blocking_items"] = ids_json(red.blocking_ids);
    report["construction"]["threshold"] = format_rational(*threshold);
  } else if (kind == "knapdec") {
    if (input_path.empty()) throw ParamError("knapdec needs --input");
    if (threshold_text.empty()) throw ParamError("knapdec needs --threshold");
    InstanceFile base = load_instance_file(input_path);
    Rat d = require_rational(threshold_text, "--threshold");
    Rat alpha =
        alpha_text.empty() ? Rat(1) : require_rational(alpha_text, "--alpha");
    Rat beta =
        beta_text.empty() ? Rat(1) : require_rational(beta_text, "--beta");
    inst = reduce_knapsack_decision(base.instance, d, alpha, beta);
    report["params"]["decision_threshold"] = format_rational(d);
    report["params"]["alpha"] = format_rational(alpha);
    report["params"]["beta"] = format_rational(beta);
  } else {
    throw ParamError("unknown kind: " + kind);
  }

  std::string text = instance_to_json(inst, threshold);
  report["instance"] = instance_summary(inst, "");
  report["instance_file"] = ordered_json::parse(text);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write: " + out_path);
    out << text;
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline knapsack under uncertain profits: query-set solver "
               "and verification suite"};
  app.require_subcommand(1);

  std::string instance_path, mode = "pseudo", epsilon = "1/4";
  std::string query_text, alpha = "1", beta = "1", threshold, out_path;
  std::string kind = "random", input_path, c_text;
  std::uint64_t seed = 0;
  int workers = 1, n = 8, max_weight = 15;
  bool no_oracle = false;

  auto* solve = app.add_subcommand("solve", "compute an (alpha,beta)-feasible "
                                            "query set with guarantees");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--mode", mode)->check(CLI::IsMember({"pseudo", "poly"}));
  solve->add_option("--epsilon", epsilon);
  solve->add_option("--seed", seed);
  solve->add_option("--workers", workers);
  solve->add_flag("--no-oracle", no_oracle);
  solve->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "check a query set");
  verify->add_option("--instance", instance_path)->required();
  verify->add_option("--query", query_text);
  verify->add_option("--alpha", alpha);
  verify->add_option("--beta", beta);
  verify->add_flag("--no-oracle", no_oracle);
  verify->add_option("--out", out_path);

  auto* prefix = app.add_subcommand("prefix", "solve the prefix problem");
  prefix->add_option("--instance", instance_path)->required();
  prefix->add_option("--threshold", threshold);
  prefix->add_option("--mode", mode)->check(CLI::IsMember({"pseudo", "poly"}));
  prefix->add_option("--workers", workers);
  prefix->add_flag("--no-oracle", no_oracle);
  prefix->add_option("--out", out_path);

  auto* generate = app.add_subcommand("generate", "emit instance files");
  generate->add_option("--kind", kind)
      ->check(CLI::IsMember({"random", "sscover", "subsetsum", "knapdec"}));
  generate->add_option("--input", input_path);
  generate->add_option("--n", n);
  generate->add_option("--max-weight", max_weight);
  generate->add_option("--seed", seed);
  generate->add_option("--c", c_text);
  generate->add_option("--threshold", threshold);
  generate->add_option("--alpha", alpha);
  generate->add_option("--beta", beta);
  generate->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(instance_path, mode, epsilon, seed, workers, no_oracle,
                       out_path);
    if (verify->parsed())
      return cmd_verify(instance_path, query_text, alpha, beta, no_oracle,
                        out_path);
    if (prefix->parsed())
      return cmd_prefix(instance_path, threshold, mode, workers, no_oracle,
                        out_path);
    if (generate->parsed())
      return cmd_generate(kind, input_path, n, max_weight, seed, c_text,
                          threshold, alpha, beta, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const EnumerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
