/**
 * @file pareto.hpp
 * @brief Pareto machinery: the verification test P(Y,Z), the weight-loop
 *        algorithm around the augmented Tchebycheff solver, and a brute-force
 *        frontier oracle for small instances.
 *
 * Solutions obtained with strictly positive weights are Pareto by
 * construction. For weight vectors with a zero component the optimum may be
 * only weakly Pareto; the test maximizes the total slack delta reachable
 * above the candidate's objective vector. Zero slack certifies the candidate;
 * positive slack yields a dominating solution that is itself Pareto.
 */

#ifndef FMCLP_PARETO_HPP
#define FMCLP_PARETO_HPP

#include <optional>
#include <vector>

#include "fmclp/solver.hpp"

namespace fmclp {

/// Outcome of the Pareto-optimality test on a candidate.
struct ParetoTestResult {
  ObjectiveTriple delta;             // componentwise slack, >= 0
  std::optional<Solution> improved;  // present iff some slack is positive

  [[nodiscard]] bool certified() const { return !improved.has_value(); }
};

/// How a stored solution earned its Pareto certificate.
enum class CertPath {
  Direct,            // strictly positive weights (or the ideal was attained)
  CheckedZeroDelta,  // Pareto test returned zero slack
  Improved,          // replaced by the Pareto test's dominating solution
};

struct WeightTrace {
  WeightVector weight;
  int solution = -1;  // index into ParetoRun::solutions
  bool reached_ideal = false;
  CertPath path = CertPath::Direct;
  double scalar_value = 0.0;
};

/// Result of the weight loop: ideal point, per-weight trace, and the
/// collected solutions deduplicated by open set (pairwise non-dominated).
struct ParetoRun {
  ObjectiveTriple ideal;
  std::vector<Solution> solutions;
  std::vector<WeightTrace> trace;
  bool reached_ideal = false;
};

struct Algorithm1Options {
  /// Abort the weight loop as soon as some solution attains the ideal point.
  bool early_stop = true;
  SolveOptions solve;
};

/// True iff a >= b componentwise with a != b (strict dominance of served
/// demand under the LU order).
bool dominates(const ObjectiveTriple& a, const ObjectiveTriple& b);

/// Pareto test: maximizes the total objective slack above the candidate.
/// Zero slack certifies the candidate as Pareto; otherwise `improved` holds
/// the dominating Pareto solution. Throws InfeasibleCandidate when the
/// candidate violates budgets or its coverage is inconsistent.
ParetoTestResult pareto_test(const Problem& problem, const Solution& candidate);

/// The weight loop: computes the ideal point, solves the augmented
/// Tchebycheff problem per weight vector, certifies (or repairs) solutions
/// from non-strict weights, and stops early when the ideal is attained.
/// Throws EmptyWeightSet. At most |weights| solutions are produced.
ParetoRun run_algorithm1(const Problem& problem,
                         const std::vector<WeightVector>& weights,
                         const Algorithm1Options& options = {});

/// Exhaustive Pareto frontier over all budget-feasible open sets, in
/// lexicographic open-set order. Verification oracle; refuses instances with
/// more than max_facilities facilities.
std::vector<Solution> brute_force_frontier(const Problem& problem,
                                           int max_facilities = 20);

/// The nine weight vectors of the standard experiment set.
std::vector<WeightVector> default_weights();

}  // namespace fmclp

#endif  // FMCLP_PARETO_HPP
