/**
 * @file solver.hpp
 * @brief Exact optimization of the scalarized mixed-binary covering problems.
 *
 * The three-objective problem maximizes F(z) = (w^- z, w z, w^+ z) over open
 * sets satisfying all three budget rows (f^- y <= B^-, f y <= B, f^+ y <= B^+)
 * with z_i forced to 1 exactly when some open facility covers point i (the
 * maximization direction makes the forced coverage optimal, so the continuous
 * relaxation of z is never materialized). Every scalarization used by the
 * Pareto machinery — single objectives, the l1/linf compromise problems and
 * the augmented weighted Tchebycheff objective — is solved exactly by a
 * best-first branch and bound over facility open/close decisions.
 */

#ifndef FMCLP_SOLVER_HPP
#define FMCLP_SOLVER_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fmclp/instance.hpp"
#include "fmclp/tfn.hpp"

namespace fmclp {

/// Scalarizable problem data: coverage sets plus demand/cost/budget triples.
/// Crisp problems store degenerate triples, so one solver serves both modes.
struct Problem {
  CoverageMap coverage;      // J_i (crisp) or the fuzzy coverage sets
  std::vector<Tfn> demand;   // per point
  std::vector<Tfn> cost;     // per facility
  Tfn budget;

  [[nodiscard]] std::size_t point_count() const { return demand.size(); }
  [[nodiscard]] std::size_t facility_count() const { return cost.size(); }

  /// Classical problem from a crisp instance (all triples degenerate).
  static Problem from_crisp(const CrispInstance& inst);

  /// Fuzzy problem: coverage via the componentwise radius test, TFN data.
  static Problem from_fuzzy(const FuzzyInstance& finst);
};

/// Objective vector F = (w^- z, w z, w^+ z). Components are indexed 1..3 to
/// match the usual naming of the three objectives.
struct ObjectiveTriple {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;

  [[nodiscard]] double component(int r) const {
    return r == 1 ? f1 : (r == 2 ? f2 : f3);
  }
  [[nodiscard]] Tfn as_tfn() const { return Tfn(f1, f2, f3); }
  bool operator==(const ObjectiveTriple&) const = default;
};

/// Weights (lambda_1, lambda_2, lambda_3, rho) of the augmented weighted
/// Tchebycheff objective.
struct WeightVector {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double rho = 0.0;

  [[nodiscard]] double lambda(int r) const {
    return r == 1 ? l1 : (r == 2 ? l2 : l3);
  }
  /// Strictly positive weights guarantee Pareto optimality of the optimum.
  [[nodiscard]] bool strictly_positive() const {
    return l1 > 0.0 && l2 > 0.0 && l3 > 0.0 && rho > 0.0;
  }
  bool operator==(const WeightVector&) const = default;
};

/// Which scalarization to solve: maximize a single objective F_r, or
/// minimize H = max_r lambda_r (F_r^I - F_r) + rho * sum_r (F_r^I - F_r)
/// against the ideal point.
struct ScalarObjective {
  enum class Kind { Single, AugTcheby };

  Kind kind = Kind::Single;
  int which = 2;          // Single: r in {1, 2, 3}
  WeightVector weights;   // AugTcheby
  ObjectiveTriple ideal;  // AugTcheby reference point, from ideal_point()

  static ScalarObjective single(int r);
  static ScalarObjective aug_tcheby(const WeightVector& w,
                                    const ObjectiveTriple& ideal);
};

/// A feasible (or candidate) open set with its induced coverage and values.
struct Solution {
  std::vector<int> open;          // sorted facility indices
  std::vector<std::uint8_t> z;    // per point, exactly 0 or 1
  ObjectiveTriple objectives;     // F
  double scalar_value = 0.0;      // F_r for Single, H for AugTcheby
  Tfn served;                     // (F1, F2, F3) as a TFN
  bool budget_feasible = true;    // all three budget rows hold
};

/// Node-log verbosity for the branch and bound.
struct SolveOptions {
  std::ostream* node_log = nullptr;  // one line per node when set
};

/// Budget rows are accepted with this absolute slack.
inline constexpr double kBudgetSlack = 1e-9;

/// Objective values a and b are treated as equal within this comparison:
/// 1e-6 relative or 1e-9 absolute, whichever is looser.
bool values_close(double a, double b);

/// Induced solution of an open set: z_i = 1 iff some open facility covers i.
/// Does not reject budget-infeasible sets; callers check budget_feasible.
/// Throws UnknownFacility on an out-of-range index.
Solution evaluate(const Problem& problem, const std::vector<int>& open);

/// Provably optimal solution of the scalarization over the feasible domain.
/// Ties on the scalar value are broken toward the lexicographically smallest
/// sorted open set. The empty set is always feasible, so an optimum exists.
Solution solve_scalar(const Problem& problem, const ScalarObjective& objective,
                      const SolveOptions& options = {});

/// Componentwise maxima of the three objectives (three Single solves).
ObjectiveTriple ideal_point(const Problem& problem);

/// l1 compromise problem: minimizes the total deviation from the ideal.
/// Thin wrapper for solve_scalar with weights (0, 0, 0, 1).
Solution csp1(const Problem& problem, const ObjectiveTriple& ideal);

/// linf compromise problem: minimizes the maximum deviation from the ideal.
/// Thin wrapper for solve_scalar with weights (1, 1, 1, 0); its optima are
/// only weakly Pareto in general and get re-checked by the Pareto test.
Solution cspinf(const Problem& problem, const ObjectiveTriple& ideal);

/// Maximizes F1 + F2 + F3 over feasible sets whose objective vector is
/// componentwise >= floor. Backs the Pareto-optimality test; the floor is
/// attainable whenever it comes from a feasible solution.
Solution solve_sum_with_floor(const Problem& problem,
                              const ObjectiveTriple& floor,
                              const SolveOptions& options = {});

}  // namespace fmclp

#endif  // FMCLP_SOLVER_HPP
