#include "fmclp/pareto.hpp"

#include <algorithm>
#include <cmath>

namespace fmclp {

namespace {

constexpr double kIdealTol = 1e-9;  // F == F^I test
constexpr double kDeltaTol = 1e-9;  // slack positivity test

bool attains(const ObjectiveTriple& f, const ObjectiveTriple& ideal) {
  return std::fabs(f.f1 - ideal.f1) <= kIdealTol &&
         std::fabs(f.f2 - ideal.f2) <= kIdealTol &&
         std::fabs(f.f3 - ideal.f3) <= kIdealTol;
}

}  // namespace

bool dominates(const ObjectiveTriple& a, const ObjectiveTriple& b) {
  return a.f1 >= b.f1 && a.f2 >= b.f2 && a.f3 >= b.f3 && !(a == b);
}

ParetoTestResult pareto_test(const Problem& problem,
                             const Solution& candidate) {
  // The test is only defined for feasible candidates with consistent
  // coverage; anything else signals a caller bug.
  Solution checked = evaluate(problem, candidate.open);
  if (!checked.budget_feasible) {
    throw InfeasibleCandidate("candidate violates a budget row");
  }
  if (candidate.z.size() == checked.z.size() && candidate.z != checked.z) {
    throw InfeasibleCandidate("candidate coverage disagrees with its open set");
  }

  Solution best = solve_sum_with_floor(problem, checked.objectives);

  ParetoTestResult result;
  result.delta.f1 = std::max(0.0, best.objectives.f1 - checked.objectives.f1);
  result.delta.f2 = std::max(0.0, best.objectives.f2 - checked.objectives.f2);
  result.delta.f3 = std::max(0.0, best.objectives.f3 - checked.objectives.f3);
  const bool improved = result.delta.f1 > kDeltaTol ||
                        result.delta.f2 > kDeltaTol ||
                        result.delta.f3 > kDeltaTol;
  if (improved) {
    result.improved = std::move(best);
  } else {
    result.delta = ObjectiveTriple{};
  }
  return result;
}

ParetoRun run_algorithm1(const Problem& problem,
                         const std::vector<WeightVector>& weights,
                         const Algorithm1Options& options) {
  if (weights.empty()) {
    throw EmptyWeightSet("Algorithm requires at least one weight vector");
  }
  ParetoRun run;
  run.ideal = ideal_point(problem);

  // Store a solution unless the same open set is already present.
  auto store = [&run](Solution sol) -> int {
    for (std::size_t k = 0; k < run.solutions.size(); ++k) {
      if (run.solutions[k].open == sol.open) return static_cast<int>(k);
    }
    run.solutions.push_back(std::move(sol));
    return static_cast<int>(run.solutions.size() - 1);
  };

  for (const WeightVector& w : weights) {
    Solution sol = solve_scalar(
        problem, ScalarObjective::aug_tcheby(w, run.ideal), options.solve);

    WeightTrace trace;
    trace.weight = w;
    trace.scalar_value = sol.scalar_value;

    if (attains(sol.objectives, run.ideal)) {
      trace.reached_ideal = true;
      trace.path = CertPath::Direct;
      trace.solution = store(std::move(sol));
      run.trace.push_back(trace);
      run.reached_ideal = true;
      if (options.early_stop) break;
      continue;
    }

    if (w.strictly_positive()) {
      trace.path = CertPath::Direct;
      trace.solution = store(std::move(sol));
    } else {
      ParetoTestResult test = pareto_test(problem, sol);
      if (test.improved) {
        trace.path = CertPath::Improved;
        trace.solution = store(std::move(*test.improved));
      } else {
        trace.path = CertPath::CheckedZeroDelta;
        trace.solution = store(std::move(sol));
      }
    }
    run.trace.push_back(trace);
  }
  return run;
}

std::vector<Solution> brute_force_frontier(const Problem& problem,
                                           int max_facilities) {
  const int m = static_cast<int>(problem.facility_count());
  if (m > max_facilities) {
    throw TooLarge("instance has " + std::to_string(m) +
                   " facilities; enumeration cap is " +
                   std::to_string(max_facilities));
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

  // Dominators have a strictly larger objective sum, so scanning in
  // descending sum order means each solution is compared only against
  // already-kept ones.
  std::vector<std::size_t> order(feasible.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& fa = feasible[a].objectives;
    const auto& fb = feasible[b].objectives;
    const double sa = fa.f1 + fa.f2 + fa.f3;
    const double sb = fb.f1 + fb.f2 + fb.f3;
    if (sa != sb) return sa > sb;
    return a < b;
  });

  std::vector<Solution> frontier;
  for (std::size_t k : order) {
    bool dominated = false;
    for (const Solution& kept : frontier) {
      if (dominates(kept.objectives, feasible[k].objectives)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(std::move(feasible[k]));
  }

  std::sort(frontier.begin(), frontier.end(),
            [](const Solution& a, const Solution& b) {
              return std::lexicographical_compare(a.open.begin(), a.open.end(),
                                                  b.open.begin(), b.open.end());
            });
  return frontier;
}

std::vector<WeightVector> default_weights() {
  return {
      {0.0, 0.0, 0.0, 1.0},     {1.0, 0.0, 0.0, 0.0},
      {0.0, 1.0, 0.0, 0.0},     {0.0, 0.0, 1.0, 0.0},
      {1.0, 1.0, 1.0, 0.001},   {1.0, 1.0, 1.0, 0.0},
      {1.0, 1.0, 0.0, 0.001},   {1.0, 0.0, 1.0, 0.001},
      {0.0, 1.0, 1.0, 0.001},
  };
}

}  // namespace fmclp
