/**
 * @file bench.hpp
 * @brief Command implementations behind the CLI: instance fuzzification,
 *        single solves, frontier runs, oracle verification, and the
 *        benchmark-table harness.
 *
 * All outputs are text: canonical instance files, key-value solution and
 * frontier files, and comma-separated benchmark tables. Everything except
 * the clearly marked timing columns is byte-deterministic for a fixed
 * configuration.
 */

#ifndef FMCLP_BENCH_HPP
#define FMCLP_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmclp/instance.hpp"
#include "fmclp/pareto.hpp"
#include "fmclp/solver.hpp"

namespace fmclp::bench {

/// Which single solve to run.
struct SolveMode {
  enum class Kind { Crisp, Single, Compromise1, CompromiseInf, Tcheby };

  Kind kind = Kind::Crisp;
  int r = 2;             // Single
  WeightVector weights;  // Tcheby

  [[nodiscard]] std::string name() const;
};

/// Validated CLI configuration shared by the subcommands.
struct RunConfig {
  std::string input_path;       // points file (plain or canonical crisp)
  std::string instance_path;    // canonical fuzzy instance, used when set
  PointFormat format = PointFormat::PlainXYW;
  std::optional<double> radius;  // required for point-file pipelines
  CostSpec costs = CostSpec::unit();
  BudgetMode budget = BudgetMode::cardinality(1);
  std::vector<int> params;  // bench budget parameters
  BudgetMode::Kind param_kind = BudgetMode::Kind::Cardinality;
  double spread = 0.2;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<WeightVector> weights = default_weights();
  bool early_stop = true;
  int oracle_cap = 20;
  std::string out_dir = ".";
  int workers = 1;
  bool verbose = false;
};

/// Crisp pipeline product: points -> co-located facilities -> budget.
CrispInstance build_crisp(const RunConfig& config);

/// Fuzzy instance for one seed: either the canonical file named in the
/// config, or a fresh fuzzification of the crisp pipeline.
FuzzyInstance build_fuzzy(const RunConfig& config, std::uint64_t seed);

/// Writes one canonical fuzzy instance per configured seed. Deterministic:
/// rerunning the same config reproduces the files byte for byte.
int cmd_fuzzify(const RunConfig& config, std::ostream& diag);

/// Solves one scalarization and writes a solution file plus a summary with
/// coverage percentages (100 * F_r / total mid demand).
int cmd_solve(const RunConfig& config, const SolveMode& mode,
              std::ostream& diag);

/// Runs the weight-loop algorithm and writes the frontier file; the summary
/// lists served TFNs and certification paths per weight.
int cmd_frontier(const RunConfig& config, std::ostream& diag);

/// Oracle cross-checks on a small instance: every scalarization against
/// exhaustive enumeration, and the frontier run against the brute-force
/// Pareto set. Returns nonzero if any check fails.
int cmd_verify(const RunConfig& config, std::ostream& diag);

/// Grid harness over (budget parameter) x (seed): writes bench.csv (group
/// averages, the pinned column set), bench_raw.csv (per-seed rows), and
/// bench_stats.txt (aggregate counters, both Pareto-test denominators).
int cmd_bench(const RunConfig& config, std::ostream& diag);

// --- solution / frontier file round-trips ---------------------------------

void write_solution_file(std::ostream& out, const Solution& sol,
                         const std::string& mode, double wall_seconds);
Solution read_solution_file(std::istream& in, std::string* mode = nullptr);

void write_pareto_run_file(std::ostream& out, const ParetoRun& run,
                           double wall_seconds);
ParetoRun read_pareto_run_file(std::istream& in);

/// The pinned benchmark table header.
extern const char* const kBenchColumns;

/// Header sniff: true when the file is a canonical fuzzy instance.
bool is_fuzzy_instance_file(const std::string& path);

}  // namespace fmclp::bench

#endif  // FMCLP_BENCH_HPP
