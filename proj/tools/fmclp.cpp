// Command-line front end: fuzzify / solve / frontier / bench / verify.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmclp/bench.hpp"

namespace {

using fmclp::BudgetMode;
using fmclp::CostSpec;
using fmclp::PointFormat;
using fmclp::WeightVector;
using fmclp::bench::RunConfig;
using fmclp::bench::SolveMode;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

CostSpec parse_costs(const std::string& text) {
  if (text == "unit") return CostSpec::unit();
  if (text.rfind("normal", 0) == 0) {
    double mean = 100.0, sd = 10.0;
    std::uint64_t seed = 0;
    if (text.size() > 7 && text[6] == ':') {
      const auto parts = split(text.substr(7), ',');
      if (parts.size() != 3) {
        throw CLI::ValidationError("--costs", "expected normal:mean,sd,seed");
      }
      mean = std::stod(parts[0]);
      sd = std::stod(parts[1]);
      seed = std::stoull(parts[2]);
    }
    return CostSpec::normal_random(mean, sd, seed);
  }
  if (text.rfind("file:", 0) == 0) {
    std::ifstream in(text.substr(5));
    if (!in) {
      throw CLI::ValidationError("--costs", "cannot open cost file");
    }
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    return CostSpec::explicit_costs(std::move(values));
  }
  throw CLI::ValidationError("--costs", "expected unit|normal[:m,s,seed]|file:PATH");
}

BudgetMode parse_budget(const std::string& text) {
  if (text.rfind("card:", 0) == 0) {
    return BudgetMode::cardinality(std::stoi(text.substr(5)));
  }
  if (text.rfind("smallest:", 0) == 0) {
    return BudgetMode::sum_smallest(std::stoi(text.substr(9)));
  }
  if (text.rfind("value:", 0) == 0) {
    return BudgetMode::explicit_value(std::stod(text.substr(6)));
  }
  throw CLI::ValidationError("--budget", "expected card:P|smallest:P|value:B");
}

std::vector<WeightVector> parse_weights(const std::string& text) {
  std::vector<WeightVector> out;
  for (const std::string& entry : split(text, ';')) {
    if (entry.empty()) continue;
    const auto parts = split(entry, ',');
    if (parts.size() != 4) {
      throw CLI::ValidationError("--weights", "each entry needs l1,l2,l3,rho");
    }
    out.push_back({std::stod(parts[0]), std::stod(parts[1]),
                   std::stod(parts[2]), std::stod(parts[3])});
  }
  if (out.empty()) throw CLI::ValidationError("--weights", "no weight vectors");
  return out;
}

SolveMode parse_mode(const std::string& text) {
  SolveMode mode;
  if (text == "crisp") {
    mode.kind = SolveMode::Kind::Crisp;
  } else if (text.rfind("single:", 0) == 0) {
    mode.kind = SolveMode::Kind::Single;
    mode.r = std::stoi(text.substr(7));
  } else if (text == "csp1") {
    mode.kind = SolveMode::Kind::Compromise1;
  } else if (text == "cspinf") {
    mode.kind = SolveMode::Kind::CompromiseInf;
  } else if (text.rfind("tcheby:", 0) == 0) {
    const auto parts = split(text.substr(7), ',');
    if (parts.size() != 4) {
      throw CLI::ValidationError("--mode", "tcheby needs l1,l2,l3,rho");
    }
    mode.kind = SolveMode::Kind::Tcheby;
    mode.weights = {std::stod(parts[0]), std::stod(parts[1]),
                    std::stod(parts[2]), std::stod(parts[3])};
  } else {
    throw CLI::ValidationError(
        "--mode", "expected crisp|single:R|csp1|cspinf|tcheby:l1,l2,l3,rho");
  }
  return mode;
}

struct CliOptions {
  std::string input;
  std::string format = "plain";
  double radius = 0.0;
  bool radius_set = false;
  std::string costs = "unit";
  std::string budget;
  std::string params;
  std::string budget_kind = "card";
  double spread = 0.2;
  std::string seeds = "1";
  std::string weights;
  bool no_early_stop = false;
  int oracle_cap = 20;
  std::string out_dir;
  int workers = 1;
  bool verbose = false;
  std::string mode = "crisp";
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--input,-i", opt.input, "points file or canonical instance")
      ->required();
  cmd->add_option("--format", opt.format, "plain|canonical (default plain)");
  cmd->add_option("--radius,-r", opt.radius,
                  "coverage radius (required for point files; no default)")
      ->each([&opt](const std::string&) { opt.radius_set = true; });
  cmd->add_option("--costs", opt.costs, "unit|normal[:mean,sd,seed]|file:PATH");
  cmd->add_option("--budget", opt.budget, "card:P|smallest:P|value:B");
  cmd->add_option("--spread", opt.spread, "fuzzification spread in (0,1]");
  cmd->add_option("--seeds", opt.seeds, "comma-separated seed list");
  cmd->add_option("--weights", opt.weights,
                  "semicolon-separated l1,l2,l3,rho entries");
  cmd->add_flag("--no-early-stop", opt.no_early_stop,
                "keep looping over weights after the ideal is attained");
  cmd->add_option("--oracle-cap", opt.oracle_cap,
                  "facility cap for exhaustive verification");
  cmd->add_option("--out,-o", opt.out_dir,
                  "output directory (default $FMCLP_OUT_DIR or '.')");
  cmd->add_option("--workers", opt.workers, "parallel bench cells");
  cmd->add_flag("--verbose,-v", opt.verbose, "log branch-and-bound nodes");
}

RunConfig to_config(const CliOptions& opt) {
  RunConfig config;
  if (fmclp::bench::is_fuzzy_instance_file(opt.input)) {
    config.instance_path = opt.input;
  } else {
    config.input_path = opt.input;
  }
  config.format = opt.format == "canonical" ? PointFormat::Canonical
                                            : PointFormat::PlainXYW;
  if (opt.radius_set) config.radius = opt.radius;
  config.costs = parse_costs(opt.costs);
  if (!opt.budget.empty()) config.budget = parse_budget(opt.budget);
  if (!opt.params.empty()) {
    for (const std::string& p : split(opt.params, ',')) {
      config.params.push_back(std::stoi(p));
    }
  }
  config.param_kind = opt.budget_kind == "smallest"
                          ? BudgetMode::Kind::SumSmallest
                          : BudgetMode::Kind::Cardinality;
  config.spread = opt.spread;
  config.seeds.clear();
  for (const std::string& s : split(opt.seeds, ',')) {
    config.seeds.push_back(std::stoull(s));
  }
  if (!opt.weights.empty()) config.weights = parse_weights(opt.weights);
  config.early_stop = !opt.no_early_stop;
  config.oracle_cap = opt.oracle_cap;
  if (!opt.out_dir.empty()) {
    config.out_dir = opt.out_dir;
  } else if (const char* env = std::getenv("FMCLP_OUT_DIR")) {
    config.out_dir = env;
  } else {
    config.out_dir = ".";
  }
  config.workers = opt.workers;
  config.verbose = opt.verbose;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for the fuzzy maximal covering location problem"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* fuzzify = app.add_subcommand(
      "fuzzify", "generate canonical fuzzy instances, one per seed");
  add_common(fuzzify, opt);
  CLI::App* solve =
      app.add_subcommand("solve", "solve one scalarized problem");
  add_common(solve, opt);
  solve->add_option("--mode,-m", opt.mode,
                    "crisp|single:R|csp1|cspinf|tcheby:l1,l2,l3,rho");
  CLI::App* frontier = app.add_subcommand(
      "frontier", "generate Pareto solutions over the weight set");
  add_common(frontier, opt);
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "benchmark grid over budget parameters and seeds");
  add_common(bench_cmd, opt);
  bench_cmd->add_option("--params", opt.params,
                        "comma-separated budget parameters");
  bench_cmd->add_option("--budget-kind", opt.budget_kind, "card|smallest");
  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check solver and frontier against enumeration");
  add_common(verify, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = to_config(opt);
    if (fuzzify->parsed()) {
      return fmclp::bench::cmd_fuzzify(config, std::cout);
    }
    if (solve->parsed()) {
      return fmclp::bench::cmd_solve(config, parse_mode(opt.mode), std::cout);
    }
    if (frontier->parsed()) {
      return fmclp::bench::cmd_frontier(config, std::cout);
    }
    if (bench_cmd->parsed()) {
      return fmclp::bench::cmd_bench(config, std::cout);
    }
    if (verify->parsed()) {
      return fmclp::bench::cmd_verify(config, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
