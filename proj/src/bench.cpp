#include "fmclp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "fmclp/canonical.hpp"

namespace fmclp::bench {

namespace {

namespace fs = std::filesystem;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string weight_text(const WeightVector& w) {
  return format_double(w.l1) + "," + format_double(w.l2) + "," +
         format_double(w.l3) + "," + format_double(w.rho);
}

std::string path_text(CertPath p) {
  switch (p) {
    case CertPath::Direct: return "direct";
    case CertPath::CheckedZeroDelta: return "checked-d0";
    case CertPath::Improved: return "improved";
  }
  return "direct";
}

CertPath path_from_text(const std::string& s) {
  if (s == "direct") return CertPath::Direct;
  if (s == "checked-d0") return CertPath::CheckedZeroDelta;
  if (s == "improved") return CertPath::Improved;
  throw Error("unknown certification path '" + s + "'");
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

canonical::Meta generation_meta(const RunConfig& config) {
  canonical::Meta meta;
  if (config.radius) meta.emplace_back("radius", format_double(*config.radius));
  switch (config.costs.kind) {
    case CostSpec::Kind::Unit:
      meta.emplace_back("costs", "unit");
      break;
    case CostSpec::Kind::NormalRandom:
      meta.emplace_back("costs", "normal:" + format_double(config.costs.mean) +
                                     "," + format_double(config.costs.sd) +
                                     "," + std::to_string(config.costs.seed));
      break;
    case CostSpec::Kind::Explicit:
      meta.emplace_back("costs", "explicit");
      break;
  }
  switch (config.budget.kind) {
    case BudgetMode::Kind::Cardinality:
      meta.emplace_back("budget", "card:" + std::to_string(config.budget.p));
      break;
    case BudgetMode::Kind::SumSmallest:
      meta.emplace_back("budget",
                        "smallest:" + std::to_string(config.budget.p));
      break;
    case BudgetMode::Kind::Explicit:
      meta.emplace_back("budget", "value:" + format_double(config.budget.value));
      break;
  }
  return meta;
}

double coverage_pct(double value, double total) {
  return total > 0.0 ? 100.0 * value / total : 0.0;
}

}  // namespace

const char* const kBenchColumns =
    "n,param,cpu_fuzzy_s,cpu_crisp_s,distinct_pareto,check_pareto_pct,"
    "reach_ideal_pct,cov_crisp_pct,cov_fuzzy_lo_pct,cov_fuzzy_mid_pct,"
    "cov_fuzzy_hi_pct,open_crisp,open_fuzzy";

bool is_fuzzy_instance_file(const std::string& path) {
  std::ifstream in(path);
  std::string magic, kind;
  return bool(in >> magic >> kind) && magic == "fmclp" && kind == "fuzzy";
}

std::string SolveMode::name() const {
  switch (kind) {
    case Kind::Crisp: return "crisp";
    case Kind::Single: return "single" + std::to_string(r);
    case Kind::Compromise1: return "csp1";
    case Kind::CompromiseInf: return "cspinf";
    case Kind::Tcheby: return "tcheby";
  }
  return "crisp";
}

CrispInstance build_crisp(const RunConfig& config) {
  if (config.input_path.empty()) {
    throw DomainViolation("no input point file configured");
  }
  std::ifstream in(config.input_path);
  if (!in) throw Error("cannot open '" + config.input_path + "'");
  CrispInstance inst = load_points(in, config.format);
  if (!config.radius) {
    throw DomainViolation(
        "coverage radius is required (there is no default radius)");
  }
  inst = make_facilities(std::move(inst), *config.radius, config.costs);
  return set_budget(std::move(inst), config.budget);
}

FuzzyInstance build_fuzzy(const RunConfig& config, std::uint64_t seed) {
  if (!config.instance_path.empty()) {
    std::ifstream in(config.instance_path);
    if (!in) throw Error("cannot open '" + config.instance_path + "'");
    return canonical::read_fuzzy(in);
  }
  return fuzzify(build_crisp(config), config.spread, seed);
}

int cmd_fuzzify(const RunConfig& config, std::ostream& diag) {
  const CrispInstance crisp = build_crisp(config);
  fs::create_directories(config.out_dir);
  const canonical::Meta meta = generation_meta(config);
  for (std::uint64_t seed : config.seeds) {
    const FuzzyInstance finst = fuzzify(crisp, config.spread, seed);
    const std::string name = stem_of(config.input_path) + "_s" +
                             std::to_string(seed) + ".fmclp";
    const fs::path out_path = fs::path(config.out_dir) / name;
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path.string() + "'");
    canonical::write_fuzzy(out, finst, meta);
    diag << "wrote " << out_path.string() << '\n';
  }
  return 0;
}

int cmd_solve(const RunConfig& config, const SolveMode& mode,
              std::ostream& diag) {
  SolveOptions opts;
  if (config.verbose) opts.node_log = &std::cerr;

  Problem problem;
  double total_mid = 0.0;
  if (mode.kind == SolveMode::Kind::Crisp) {
    const CrispInstance crisp = config.instance_path.empty()
                                    ? build_crisp(config)
                                    : build_fuzzy(config, 0).center;
    problem = Problem::from_crisp(crisp);
    total_mid = crisp.total_demand();
  } else {
    const FuzzyInstance finst = build_fuzzy(config, config.seeds.front());
    problem = Problem::from_fuzzy(finst);
    total_mid = finst.center.total_demand();
  }

  const double t0 = now_seconds();
  Solution sol;
  switch (mode.kind) {
    case SolveMode::Kind::Crisp:
    case SolveMode::Kind::Single: {
      const int r = mode.kind == SolveMode::Kind::Crisp ? 2 : mode.r;
      sol = solve_scalar(problem, ScalarObjective::single(r), opts);
      break;
    }
    case SolveMode::Kind::Compromise1:
      sol = csp1(problem, ideal_point(problem));
      break;
    case SolveMode::Kind::CompromiseInf:
      sol = cspinf(problem, ideal_point(problem));
      break;
    case SolveMode::Kind::Tcheby:
      sol = solve_scalar(problem,
                         ScalarObjective::aug_tcheby(mode.weights,
                                                     ideal_point(problem)),
                         opts);
      break;
  }
  const double wall = now_seconds() - t0;

  fs::create_directories(config.out_dir);
  const fs::path out_path =
      fs::path(config.out_dir) / ("solution_" + mode.name() + ".txt");
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path.string() + "'");
  write_solution_file(out, sol, mode.name(), wall);

  std::size_t covered = 0;
  for (auto zi : sol.z) covered += zi;
  diag << "mode " << mode.name() << ": open {";
  for (std::size_t k = 0; k < sol.open.size(); ++k) {
    diag << (k ? ", " : "") << sol.open[k];
  }
  diag << "}, covered " << covered << "/" << sol.z.size() << ", served "
       << to_string(sol.served) << ", value "
       << format_double(sol.scalar_value) << '\n';
  diag << "coverage% (of mid total demand): "
       << format_double(coverage_pct(sol.objectives.f1, total_mid)) << " / "
       << format_double(coverage_pct(sol.objectives.f2, total_mid)) << " / "
       << format_double(coverage_pct(sol.objectives.f3, total_mid)) << '\n';
  diag << "wrote " << out_path.string() << '\n';
  return 0;
}

int cmd_frontier(const RunConfig& config, std::ostream& diag) {
  const FuzzyInstance finst = build_fuzzy(config, config.seeds.front());
  const Problem problem = Problem::from_fuzzy(finst);

  Algorithm1Options opts;
  opts.early_stop = config.early_stop;
  if (config.verbose) opts.solve.node_log = &std::cerr;

  const double t0 = now_seconds();
  const ParetoRun run = run_algorithm1(problem, config.weights, opts);
  const double wall = now_seconds() - t0;

  fs::create_directories(config.out_dir);
  const std::string stem = config.instance_path.empty()
                               ? stem_of(config.input_path)
                               : stem_of(config.instance_path);
  const fs::path out_path =
      fs::path(config.out_dir) / ("frontier_" + stem + ".txt");
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path.string() + "'");
  write_pareto_run_file(out, run, wall);

  diag << "ideal " << to_string(run.ideal.as_tfn()) << (run.reached_ideal
       ? " (attained)" : " (not attained)") << '\n';
  for (const WeightTrace& t : run.trace) {
    const Solution& sol = run.solutions[static_cast<std::size_t>(t.solution)];
    diag << "weight (" << weight_text(t.weight) << ") -> served "
         << to_string(sol.served) << " via " << path_text(t.path) << '\n';
  }
  diag << run.solutions.size() << " distinct Pareto solution(s)\n";
  diag << "wrote " << out_path.string() << '\n';
  return 0;
}

namespace {

// All budget-feasible open sets of a small problem.
std::vector<Solution> enumerate_feasible(const Problem& problem, int cap) {
  const int m = static_cast<int>(problem.facility_count());
  if (m > cap) {
    throw TooLarge("instance has " + std::to_string(m) +
                   " facilities; verification cap is " + std::to_string(cap));
  }
  std::vector<Solution> feasible;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::vector<int> open;
    for (int j = 0; j < m; ++j) {
      if (mask & (1ULL << j)) open.push_back(j);
    }
    Solution sol = evaluate(problem, open);
    if (sol.budget_feasible) feasible.push_back(std::move(sol));
  }
  return feasible;
}

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& diag) {
  const FuzzyInstance finst = build_fuzzy(config, config.seeds.front());
  const Problem problem = Problem::from_fuzzy(finst);
  const std::vector<Solution> feasible =
      enumerate_feasible(problem, config.oracle_cap);

  int failures = 0;
  auto report = [&](const std::string& what, bool ok) {
    diag << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  // Ideal point against the enumeration.
  ObjectiveTriple enum_ideal;
  for (const Solution& s : feasible) {
    enum_ideal.f1 = std::max(enum_ideal.f1, s.objectives.f1);
    enum_ideal.f2 = std::max(enum_ideal.f2, s.objectives.f2);
    enum_ideal.f3 = std::max(enum_ideal.f3, s.objectives.f3);
  }
  const ObjectiveTriple ideal = ideal_point(problem);
  report("ideal point matches enumeration",
         values_close(ideal.f1, enum_ideal.f1) &&
             values_close(ideal.f2, enum_ideal.f2) &&
             values_close(ideal.f3, enum_ideal.f3));

  // Every scalarization against the enumeration optimum.
  std::vector<std::pair<std::string, ScalarObjective>> objectives;
  for (int r = 1; r <= 3; ++r) {
    objectives.emplace_back("single" + std::to_string(r),
                            ScalarObjective::single(r));
  }
  objectives.emplace_back(
      "csp1", ScalarObjective::aug_tcheby({0.0, 0.0, 0.0, 1.0}, ideal));
  objectives.emplace_back(
      "cspinf", ScalarObjective::aug_tcheby({1.0, 1.0, 1.0, 0.0}, ideal));
  for (const WeightVector& w : config.weights) {
    objectives.emplace_back("tcheby(" + weight_text(w) + ")",
                            ScalarObjective::aug_tcheby(w, ideal));
  }
  for (const auto& [label, objective] : objectives) {
    const Solution got = solve_scalar(problem, objective);
    double best = 0.0;
    bool first = true;
    for (const Solution& s : feasible) {
      double v;
      if (objective.kind == ScalarObjective::Kind::Single) {
        v = s.objectives.component(objective.which);
        if (first || v > best) best = v;
      } else {
        const WeightVector& w = objective.weights;
        const double d1 = ideal.f1 - s.objectives.f1;
        const double d2 = ideal.f2 - s.objectives.f2;
        const double d3 = ideal.f3 - s.objectives.f3;
        v = std::max({w.l1 * d1, w.l2 * d2, w.l3 * d3}) +
            w.rho * (d1 + d2 + d3);
        if (first || v < best) best = v;
      }
      first = false;
    }
    report(label + " optimum matches enumeration",
           values_close(got.scalar_value, best));
  }

  // Frontier run against the brute-force Pareto set.
  Algorithm1Options opts;
  opts.early_stop = config.early_stop;
  const ParetoRun run = run_algorithm1(problem, config.weights, opts);
  const std::vector<Solution> frontier =
      brute_force_frontier(problem, config.oracle_cap);
  bool all_on_frontier = true;
  bool all_certified = true;
  for (const Solution& sol : run.solutions) {
    bool found = false;
    for (const Solution& f : frontier) {
      if (values_close(f.objectives.f1, sol.objectives.f1) &&
          values_close(f.objectives.f2, sol.objectives.f2) &&
          values_close(f.objectives.f3, sol.objectives.f3)) {
        found = true;
        break;
      }
    }
    all_on_frontier = all_on_frontier && found;
    all_certified = all_certified && pareto_test(problem, sol).certified();
  }
  report("all frontier-run solutions lie on the brute-force frontier",
         all_on_frontier);
  report("all frontier-run solutions pass the Pareto test with zero slack",
         all_certified);

  diag << (failures == 0 ? "verification passed" : "verification FAILED")
       << '\n';
  return failures == 0 ? 0 : 1;
}

namespace {

struct BenchCell {
  int param = 0;
  std::uint64_t seed = 0;
};

struct BenchRow {
  int n = 0;
  int param = 0;
  double cpu_fuzzy = 0.0;
  double cpu_crisp = 0.0;
  double distinct_pareto = 0.0;
  double check_pareto_pct = 0.0;
  double reach_ideal_pct = 0.0;
  double cov_crisp = 0.0;
  double cov_lo = 0.0;
  double cov_mid = 0.0;
  double cov_hi = 0.0;
  double open_crisp = 0.0;
  double open_fuzzy = 0.0;
  // stats counters
  int weights_run = 0;
  int tests_run = 0;
  int tests_improved = 0;
  bool failed = false;
  std::string error;
};

void write_row(std::ostream& out, const BenchRow& row) {
  out << row.n << ',' << row.param << ',' << format_seconds(row.cpu_fuzzy)
      << ',' << format_seconds(row.cpu_crisp) << ','
      << format_double(row.distinct_pareto) << ','
      << format_double(row.check_pareto_pct) << ','
      << format_double(row.reach_ideal_pct) << ','
      << format_double(row.cov_crisp) << ',' << format_double(row.cov_lo)
      << ',' << format_double(row.cov_mid) << ',' << format_double(row.cov_hi)
      << ',' << format_double(row.open_crisp) << ','
      << format_double(row.open_fuzzy) << '\n';
}

}  // namespace

int cmd_bench(const RunConfig& config, std::ostream& diag) {
  if (config.params.empty()) {
    throw DomainViolation("bench requires at least one budget parameter");
  }
  if (config.input_path.empty()) {
    throw DomainViolation("bench requires a point file input");
  }
  std::ifstream in(config.input_path);
  if (!in) throw Error("cannot open '" + config.input_path + "'");
  const CrispInstance base = load_points(in, config.format);
  if (!config.radius) {
    throw DomainViolation(
        "coverage radius is required (there is no default radius)");
  }
  const CrispInstance with_fac =
      make_facilities(base, *config.radius, config.costs);
  const double total_mid = with_fac.total_demand();
  const int n = static_cast<int>(with_fac.points.size());

  std::vector<BenchCell> cells;
  for (int p : config.params) {
    for (std::uint64_t s : config.seeds) cells.push_back({p, s});
  }
  std::vector<BenchRow> rows(cells.size());

  auto run_cell = [&](const BenchCell& cell) -> BenchRow {
    BenchRow row;
    row.n = n;
    row.param = cell.param;
    try {
      const BudgetMode mode =
          config.param_kind == BudgetMode::Kind::Cardinality
              ? BudgetMode::cardinality(cell.param)
              : BudgetMode::sum_smallest(cell.param);
      const CrispInstance crisp = set_budget(with_fac, mode);
      const FuzzyInstance finst = fuzzify(crisp, config.spread, cell.seed);
      const Problem crisp_problem = Problem::from_crisp(crisp);
      const Problem fuzzy_problem = Problem::from_fuzzy(finst);

      double t0 = now_seconds();
      const Solution crisp_sol =
          solve_scalar(crisp_problem, ScalarObjective::single(2));
      row.cpu_crisp = now_seconds() - t0;

      Algorithm1Options opts;
      opts.early_stop = config.early_stop;
      t0 = now_seconds();
      const ParetoRun run = run_algorithm1(fuzzy_problem, config.weights, opts);
      row.cpu_fuzzy = now_seconds() - t0;

      row.distinct_pareto = static_cast<double>(run.solutions.size());
      row.reach_ideal_pct = run.reached_ideal ? 100.0 : 0.0;
      row.cov_crisp = coverage_pct(crisp_sol.objectives.f2, total_mid);
      row.open_crisp = static_cast<double>(crisp_sol.open.size());

      double lo = 0.0, mid = 0.0, hi = 0.0, open_count = 0.0;
      for (const WeightTrace& t : run.trace) {
        const auto& sol = run.solutions[static_cast<std::size_t>(t.solution)];
        lo += coverage_pct(sol.objectives.f1, total_mid);
        mid += coverage_pct(sol.objectives.f2, total_mid);
        hi += coverage_pct(sol.objectives.f3, total_mid);
        open_count += static_cast<double>(sol.open.size());
        row.weights_run += 1;
        if (t.path != CertPath::Direct) {
          row.tests_run += 1;
          if (t.path == CertPath::Improved) row.tests_improved += 1;
        }
      }
      const double runs = std::max(1, row.weights_run);
      row.cov_lo = lo / runs;
      row.cov_mid = mid / runs;
      row.cov_hi = hi / runs;
      row.open_fuzzy = open_count / runs;
      row.check_pareto_pct =
          row.tests_run > 0 ? 100.0 * row.tests_improved / row.tests_run : 0.0;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      const double nan = std::nan("");
      row.cpu_fuzzy = row.cpu_crisp = nan;
      row.distinct_pareto = row.check_pareto_pct = row.reach_ideal_pct = nan;
      row.cov_crisp = row.cov_lo = row.cov_mid = row.cov_hi = nan;
      row.open_crisp = row.open_fuzzy = nan;
    }
    return row;
  };

  const int workers =
      std::clamp(config.workers, 1, static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < cells.size(); ++k) rows[k] = run_cell(cells[k]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= cells.size()) break;
        rows[k] = run_cell(cells[k]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  fs::create_directories(config.out_dir);
  const fs::path raw_path = fs::path(config.out_dir) / "bench_raw.csv";
  std::ofstream raw(raw_path);
  raw << "seed," << kBenchColumns << '\n';
  for (std::size_t k = 0; k < rows.size(); ++k) {
    raw << cells[k].seed << ',';
    write_row(raw, rows[k]);
  }

  // Group averages per budget parameter, mirroring the per-parameter rows of
  // the reference tables.
  const fs::path group_path = fs::path(config.out_dir) / "bench.csv";
  std::ofstream group(group_path);
  group << kBenchColumns << '\n';
  int total_weights = 0, total_tests = 0, total_improved = 0, failed_cells = 0;
  for (int p : config.params) {
    BenchRow avg;
    avg.n = n;
    avg.param = p;
    int count = 0;
    int improved = 0, tested = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (cells[k].param != p || rows[k].failed) continue;
      const BenchRow& r = rows[k];
      avg.cpu_fuzzy += r.cpu_fuzzy;
      avg.cpu_crisp += r.cpu_crisp;
      avg.distinct_pareto += r.distinct_pareto;
      avg.reach_ideal_pct += r.reach_ideal_pct;
      avg.cov_crisp += r.cov_crisp;
      avg.cov_lo += r.cov_lo;
      avg.cov_mid += r.cov_mid;
      avg.cov_hi += r.cov_hi;
      avg.open_crisp += r.open_crisp;
      avg.open_fuzzy += r.open_fuzzy;
      improved += r.tests_improved;
      tested += r.tests_run;
      total_weights += r.weights_run;
      ++count;
    }
    if (count == 0) continue;
    const double c = count;
    avg.cpu_fuzzy /= c;
    avg.cpu_crisp /= c;
    avg.distinct_pareto /= c;
    avg.reach_ideal_pct /= c;
    avg.cov_crisp /= c;
    avg.cov_lo /= c;
    avg.cov_mid /= c;
    avg.cov_hi /= c;
    avg.open_crisp /= c;
    avg.open_fuzzy /= c;
    avg.check_pareto_pct = tested > 0 ? 100.0 * improved / tested : 0.0;
    write_row(group, avg);
    total_tests += tested;
    total_improved += improved;
  }
  for (const BenchRow& r : rows) {
    if (r.failed) ++failed_cells;
  }

  const fs::path stats_path = fs::path(config.out_dir) / "bench_stats.txt";
  std::ofstream stats(stats_path);
  stats << "cells " << cells.size() << '\n';
  stats << "failed_cells " << failed_cells << '\n';
  stats << "weights_run " << total_weights << '\n';
  stats << "pareto_tests_run " << total_tests << '\n';
  stats << "pareto_tests_improved " << total_improved << '\n';
  // Both denominators for the Pareto-test statistic: strict weights skip the
  // test, so the share of tested weights differs from the share of all runs.
  stats << "check_pareto_pct_of_tested "
        << format_double(total_tests > 0 ? 100.0 * total_improved / total_tests
                                         : 0.0)
        << '\n';
  stats << "check_pareto_pct_of_all_weights "
        << format_double(total_weights > 0
                             ? 100.0 * total_improved / total_weights
                             : 0.0)
        << '\n';

  diag << "wrote " << raw_path.string() << ", " << group_path.string() << ", "
       << stats_path.string() << '\n';
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].failed) {
      diag << "cell (param " << cells[k].param << ", seed " << cells[k].seed
           << ") failed: " << rows[k].error << '\n';
    }
  }
  return failed_cells == 0 ? 0 : 1;
}

// --- solution / frontier files ---------------------------------------------

void write_solution_file(std::ostream& out, const Solution& sol,
                         const std::string& mode, double wall_seconds) {
  out << "fmclp solution 1\n";
  out << "mode " << mode << '\n';
  out << "feasible " << (sol.budget_feasible ? 1 : 0) << '\n';
  out << "open " << sol.open.size();
  for (int j : sol.open) out << ' ' << j;
  out << '\n';
  std::size_t covered = 0;
  for (auto zi : sol.z) covered += zi;
  out << "covered " << covered << ' ' << sol.z.size() << '\n';
  out << "objective " << format_double(sol.objectives.f1) << ' '
      << format_double(sol.objectives.f2) << ' '
      << format_double(sol.objectives.f3) << '\n';
  out << "served " << to_string(sol.served) << '\n';
  out << "value " << format_double(sol.scalar_value) << '\n';
  out << "walltime_s " << format_seconds(wall_seconds) << '\n';
  out << "end\n";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> fields;
  std::string tok;
  while (ss >> tok) fields.push_back(tok);
  return fields;
}

double field_double(const std::string& tok) {
  double v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{}) throw Error("bad number '" + tok + "'");
  return v;
}

}  // namespace

Solution read_solution_file(std::istream& in, std::string* mode) {
  Solution sol;
  std::string line;
  std::size_t covered = 0, npoints = 0;
  while (std::getline(in, line)) {
    const auto f = split_fields(line);
    if (f.empty()) continue;
    if (f[0] == "mode" && f.size() >= 2 && mode) *mode = f[1];
    if (f[0] == "feasible" && f.size() >= 2) sol.budget_feasible = f[1] == "1";
    if (f[0] == "open") {
      for (std::size_t k = 2; k < f.size(); ++k) {
        sol.open.push_back(static_cast<int>(field_double(f[k])));
      }
    }
    if (f[0] == "covered" && f.size() >= 3) {
      covered = static_cast<std::size_t>(field_double(f[1]));
      npoints = static_cast<std::size_t>(field_double(f[2]));
    }
    if (f[0] == "objective" && f.size() >= 4) {
      sol.objectives.f1 = field_double(f[1]);
      sol.objectives.f2 = field_double(f[2]);
      sol.objectives.f3 = field_double(f[3]);
    }
    if (f[0] == "value" && f.size() >= 2) sol.scalar_value = field_double(f[1]);
    if (f[0] == "end") break;
  }
  (void)covered;
  (void)npoints;
  sol.served = sol.objectives.as_tfn();
  return sol;
}

void write_pareto_run_file(std::ostream& out, const ParetoRun& run,
                           double wall_seconds) {
  out << "fmclp paretorun 1\n";
  out << "ideal " << format_double(run.ideal.f1) << ' '
      << format_double(run.ideal.f2) << ' ' << format_double(run.ideal.f3)
      << '\n';
  out << "reached_ideal " << (run.reached_ideal ? 1 : 0) << '\n';
  out << "solutions " << run.solutions.size() << '\n';
  for (std::size_t k = 0; k < run.solutions.size(); ++k) {
    const Solution& s = run.solutions[k];
    out << "sol " << k << " value " << format_double(s.scalar_value) << " F "
        << format_double(s.objectives.f1) << ' '
        << format_double(s.objectives.f2) << ' '
        << format_double(s.objectives.f3) << " open " << s.open.size();
    for (int j : s.open) out << ' ' << j;
    out << '\n';
  }
  out << "trace " << run.trace.size() << '\n';
  for (const WeightTrace& t : run.trace) {
    out << "tr " << format_double(t.weight.l1) << ' '
        << format_double(t.weight.l2) << ' ' << format_double(t.weight.l3)
        << ' ' << format_double(t.weight.rho) << " sol " << t.solution
        << " ideal " << (t.reached_ideal ? 1 : 0) << " path "
        << path_text(t.path) << " value " << format_double(t.scalar_value)
        << '\n';
  }
  out << "walltime_s " << format_seconds(wall_seconds) << '\n';
  out << "end\n";
}

ParetoRun read_pareto_run_file(std::istream& in) {
  ParetoRun run;
  std::string line;
  while (std::getline(in, line)) {
    const auto f = split_fields(line);
    if (f.empty()) continue;
    if (f[0] == "ideal" && f.size() >= 4) {
      run.ideal.f1 = field_double(f[1]);
      run.ideal.f2 = field_double(f[2]);
      run.ideal.f3 = field_double(f[3]);
    }
    if (f[0] == "reached_ideal" && f.size() >= 2) {
      run.reached_ideal = f[1] == "1";
    }
    if (f[0] == "sol" && f.size() >= 10) {
      Solution s;
      s.scalar_value = field_double(f[3]);
      s.objectives.f1 = field_double(f[5]);
      s.objectives.f2 = field_double(f[6]);
      s.objectives.f3 = field_double(f[7]);
      const auto count = static_cast<std::size_t>(field_double(f[9]));
      for (std::size_t k = 0; k < count; ++k) {
        s.open.push_back(static_cast<int>(field_double(f[10 + k])));
      }
      s.served = s.objectives.as_tfn();
      run.solutions.push_back(std::move(s));
    }
    if (f[0] == "tr" && f.size() >= 13) {
      WeightTrace t;
      t.weight.l1 = field_double(f[1]);
      t.weight.l2 = field_double(f[2]);
      t.weight.l3 = field_double(f[3]);
      t.weight.rho = field_double(f[4]);
      t.solution = static_cast<int>(field_double(f[6]));
      t.reached_ideal = f[8] == "1";
      t.path = path_from_text(f[10]);
      t.scalar_value = field_double(f[12]);
      run.trace.push_back(t);
    }
    if (f[0] == "end") break;
  }
  return run;
}

}  // namespace fmclp::bench
