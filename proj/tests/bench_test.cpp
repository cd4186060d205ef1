#include "fmclp/bench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fmclp/canonical.hpp"

using namespace fmclp;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fmclp_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_demo_points(const fs::path& dir) {
  const fs::path file = dir / "demo.xyw";
  std::ofstream out(file);
  out << "6\n0 0 10\n0.3 0 20\n1 1 5\n4 4 30\n4.2 4 25\n9 9 40\n";
  return file.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bench::RunConfig demo_config(const fs::path& dir) {
  bench::RunConfig config;
  config.input_path = write_demo_points(dir);
  config.radius = 0.5;
  config.budget = BudgetMode::cardinality(2);
  config.spread = 0.2;
  config.seeds = {1, 2};
  config.out_dir = dir.string();
  return config;
}

}  // namespace

TEST_CASE("fuzzify command is byte-deterministic") {
  const fs::path dir1 = temp_dir("fz1");
  const fs::path dir2 = temp_dir("fz2");
  bench::RunConfig c1 = demo_config(dir1);
  bench::RunConfig c2 = demo_config(dir2);
  c2.input_path = c1.input_path;

  std::ostringstream diag;
  CHECK(bench::cmd_fuzzify(c1, diag) == 0);
  CHECK(bench::cmd_fuzzify(c2, diag) == 0);

  for (std::uint64_t seed : {1, 2}) {
    const std::string name = "demo_s" + std::to_string(seed) + ".fmclp";
    const std::string a = slurp(dir1 / name);
    const std::string b = slurp(dir2 / name);
    CHECK(!a.empty());
    CHECK(a == b);

    std::istringstream in(a);
    const FuzzyInstance finst = canonical::read_fuzzy(in);
    CHECK(finst.seed == seed);
    CHECK(finst.center.points.size() == 6);
    CHECK(bench::is_fuzzy_instance_file((dir1 / name).string()));
  }

  // Different seeds differ in extremes but share mids.
  std::ifstream in1(dir1 / "demo_s1.fmclp"), in2(dir1 / "demo_s2.fmclp");
  const FuzzyInstance f1 = canonical::read_fuzzy(in1);
  const FuzzyInstance f2 = canonical::read_fuzzy(in2);
  CHECK(f1.demands != f2.demands);
  for (std::size_t i = 0; i < f1.demands.size(); ++i) {
    CHECK(f1.demands[i].mid == f2.demands[i].mid);
  }
}

TEST_CASE("fuzzify rejects invalid spreads") {
  const fs::path dir = temp_dir("fzbad");
  bench::RunConfig config = demo_config(dir);
  config.spread = 0.0;
  std::ostringstream diag;
  CHECK_THROWS_AS(bench::cmd_fuzzify(config, diag), DomainViolation);
}

TEST_CASE("missing radius is refused") {
  const fs::path dir = temp_dir("norad");
  bench::RunConfig config = demo_config(dir);
  config.radius.reset();
  std::ostringstream diag;
  CHECK_THROWS_AS(bench::cmd_solve(config, {}, diag), DomainViolation);
}

TEST_CASE("solve command writes a parseable solution") {
  const fs::path dir = temp_dir("solve");
  bench::RunConfig config = demo_config(dir);
  std::ostringstream diag;

  bench::SolveMode crisp;
  crisp.kind = bench::SolveMode::Kind::Crisp;
  CHECK(bench::cmd_solve(config, crisp, diag) == 0);

  std::ifstream in(dir / "solution_crisp.txt");
  std::string mode;
  const Solution sol = bench::read_solution_file(in, &mode);
  CHECK(mode == "crisp");
  CHECK(sol.open.size() <= 2);
  CHECK(sol.budget_feasible);
  CHECK(sol.objectives.f2 > 0);

  // Full budget covers everything on this instance.
  bench::RunConfig generous = config;
  generous.budget = BudgetMode::cardinality(6);
  generous.out_dir = (dir / "full").string();
  CHECK(bench::cmd_solve(generous, crisp, diag) == 0);
  std::ifstream in2(fs::path(generous.out_dir) / "solution_crisp.txt");
  const Solution full = bench::read_solution_file(in2);
  CHECK(full.objectives.f2 == doctest::Approx(130.0));  // all demand
}

TEST_CASE("solution files round-trip") {
  Solution sol;
  sol.open = {2, 13, 20};
  sol.z = {1, 1, 0, 1};
  sol.objectives = {2437.8, 3290.0, 3970.53};
  sol.served = sol.objectives.as_tfn();
  sol.scalar_value = 42.5;
  std::ostringstream out;
  bench::write_solution_file(out, sol, "tcheby", 0.25);
  std::istringstream in(out.str());
  std::string mode;
  const Solution back = bench::read_solution_file(in, &mode);
  CHECK(mode == "tcheby");
  CHECK(back.open == sol.open);
  CHECK(back.objectives == sol.objectives);
  CHECK(back.scalar_value == sol.scalar_value);
}

TEST_CASE("frontier command writes a parseable run") {
  const fs::path dir = temp_dir("frontier");
  bench::RunConfig config = demo_config(dir);
  std::ostringstream diag;
  CHECK(bench::cmd_frontier(config, diag) == 0);

  std::ifstream in(dir / "frontier_demo.txt");
  const ParetoRun run = bench::read_pareto_run_file(in);
  CHECK(run.solutions.size() >= 1);
  CHECK(run.solutions.size() <= 9);
  CHECK(run.trace.size() >= 1);
  for (const WeightTrace& t : run.trace) {
    CHECK(t.solution >= 0);
    CHECK(t.solution < static_cast<int>(run.solutions.size()));
  }
}

TEST_CASE("verify command passes on a small instance") {
  const fs::path dir = temp_dir("verify");
  bench::RunConfig config = demo_config(dir);
  std::ostringstream diag;
  CHECK(bench::cmd_verify(config, diag) == 0);
  CHECK(diag.str().find("verification passed") != std::string::npos);
}

TEST_CASE("bench command emits the pinned columns and sane trends") {
  const fs::path dir = temp_dir("bench");
  bench::RunConfig config = demo_config(dir);
  config.params = {1, 2, 3};
  config.param_kind = BudgetMode::Kind::Cardinality;
  config.seeds = {1, 2};
  config.workers = 2;
  std::ostringstream diag;
  CHECK(bench::cmd_bench(config, diag) == 0);

  const std::string group = slurp(dir / "bench.csv");
  std::istringstream lines(group);
  std::string header;
  std::getline(lines, header);
  CHECK(header == std::string(bench::kBenchColumns));

  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 13);
    const double distinct = cols[4], reach = cols[6];
    const double cov_crisp = cols[7], lo = cols[8], mid = cols[9],
                 hi = cols[10];
    CHECK(distinct >= 1);
    CHECK(distinct <= 9);
    CHECK(reach >= 0);
    CHECK(reach <= 100);
    CHECK(lo <= mid);
    CHECK(mid <= hi);
    CHECK(mid <= cov_crisp);
    CHECK(lo >= 0);
    CHECK(hi <= 120);
  }
  CHECK(rows == 3);

  const std::string raw = slurp(dir / "bench_raw.csv");
  CHECK(raw.find("seed," + std::string(bench::kBenchColumns)) == 0);

  const std::string stats = slurp(dir / "bench_stats.txt");
  CHECK(stats.find("check_pareto_pct_of_tested") != std::string::npos);
  CHECK(stats.find("check_pareto_pct_of_all_weights") != std::string::npos);

  // Deterministic apart from the timing columns.
  const fs::path dir2 = temp_dir("bench2");
  bench::RunConfig config2 = config;
  config2.out_dir = dir2.string();
  CHECK(bench::cmd_bench(config2, diag) == 0);
  auto strip_times = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string row;
    while (std::getline(in, row)) {
      std::vector<std::string> cells;
      std::stringstream ss(row);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      for (std::size_t k = 0; k < cells.size(); ++k) {
        // cpu_fuzzy_s / cpu_crisp_s sit at fixed positions after the header.
        if (k == 2 || k == 3) continue;
        out += cells[k];
        out += '|';
      }
      out += '\n';
    }
    return out;
  };
  CHECK(strip_times(slurp(dir2 / "bench.csv")) == strip_times(group));
}
