/**
 * @file instance.hpp
 * @brief Crisp benchmark instances, cost/budget generation, fuzzification,
 *        and coverage sets.
 *
 * A crisp instance holds demand points, candidate facilities and a budget.
 * Fuzzification turns every parameter into a TFN whose apex equals the crisp
 * value and whose extremes are uniform draws within a relative spread; the
 * seed is stored so instances are reproducible. Coverage sets come in two
 * flavours: the crisp set J_i (distance within radius) and the fuzzy set
 * (all three triplet components within the radius triplet), which is always
 * a subset of the crisp one for apex-preserving fuzzifications.
 */

#ifndef FMCLP_INSTANCE_HPP
#define FMCLP_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fmclp/errors.hpp"
#include "fmclp/tfn.hpp"

namespace fmclp {

struct DemandPoint {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;  // w_i >= 0
};

struct Facility {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;  // R_j > 0
  double cost = 0.0;    // f_j >= 0
};

struct CrispInstance {
  std::vector<DemandPoint> points;
  std::vector<Facility> facilities;
  double budget = 0.0;

  [[nodiscard]] double total_demand() const;
};

/// Fuzzified instance: the crisp center plus one TFN per parameter.
/// Every TFN is nonnegative and its mid equals the corresponding crisp value
/// bit for bit.
struct FuzzyInstance {
  CrispInstance center;
  std::vector<Tfn> demands;                 // per point
  std::vector<std::vector<Tfn>> distances;  // [point][facility]
  std::vector<Tfn> radii;                   // per facility
  std::vector<Tfn> costs;                   // per facility
  Tfn budget;
  std::uint64_t seed = 0;
  double spread = 0.0;
};

/// Per demand point, the indices of facilities that cover it.
struct CoverageMap {
  std::vector<std::vector<int>> sets;  // sorted facility ids per point

  [[nodiscard]] std::size_t size() const { return sets.size(); }
  [[nodiscard]] const std::vector<int>& covering(std::size_t point) const {
    return sets[point];
  }
};

enum class PointFormat {
  PlainXYW,   // line 1: n; then n lines "x y w"
  Canonical,  // structured key-value serialization (see canonical.hpp)
};

/// Cost generation rule for make_facilities.
struct CostSpec {
  enum class Kind { Unit, NormalRandom, Explicit };

  Kind kind = Kind::Unit;
  double mean = 100.0;          // NormalRandom
  double sd = 10.0;             // NormalRandom
  std::uint64_t seed = 0;       // NormalRandom
  std::vector<double> values;   // Explicit

  static CostSpec unit() { return {}; }
  static CostSpec normal_random(double mean, double sd, std::uint64_t seed) {
    CostSpec s;
    s.kind = Kind::NormalRandom;
    s.mean = mean;
    s.sd = sd;
    s.seed = seed;
    return s;
  }
  static CostSpec explicit_costs(std::vector<double> v) {
    CostSpec s;
    s.kind = Kind::Explicit;
    s.values = std::move(v);
    return s;
  }
};

/// Budget rule for set_budget.
struct BudgetMode {
  enum class Kind { Cardinality, SumSmallest, Explicit };

  Kind kind = Kind::Explicit;
  int p = 0;           // Cardinality / SumSmallest
  double value = 0.0;  // Explicit

  static BudgetMode cardinality(int p) { return {Kind::Cardinality, p, 0.0}; }
  static BudgetMode sum_smallest(int p) { return {Kind::SumSmallest, p, 0.0}; }
  static BudgetMode explicit_value(double b) { return {Kind::Explicit, 0, b}; }
};

/// Reads demand points; facilities and budget stay unset. Points get ids
/// 0..n-1 in file order. Throws ParseError (with line number), EmptyInstance,
/// or DomainViolation on negative demand.
CrispInstance load_points(std::istream& in, PointFormat format);

/// Writes the point list back in PlainXYW form; load_points of the output
/// reproduces the input point list exactly.
void serialize_points(std::ostream& out, const CrispInstance& inst);

/// Places one candidate facility per demand point at the same coordinates,
/// all with the given radius, costs per spec (normal draws truncated at 0).
CrispInstance make_facilities(CrispInstance inst, double radius,
                              const CostSpec& costs);

/// Sets the budget. Cardinality(p) requires unit costs and gives B = p;
/// SumSmallest(p) gives the sum of the p smallest costs.
CrispInstance set_budget(CrispInstance inst, const BudgetMode& mode);

/// Euclidean distance matrix [point][facility].
std::vector<std::vector<double>> distances(const CrispInstance& inst);

/// Fuzzifies every parameter a into (U[(1-spread)a, a], a, U[a, (1+spread)a]).
/// Deterministic for a given seed; spread must lie in (0, 1]. Draw order:
/// demands, distance matrix row-major, radii, costs, budget (two uniform
/// draws per parameter).
FuzzyInstance fuzzify(const CrispInstance& inst, double spread,
                      std::uint64_t seed);

/// Crisp coverage sets J_i = { j : d_ij <= R_j } (boundary inclusive).
CoverageMap coverage_crisp(const CrispInstance& inst);

/// Fuzzy coverage sets: j covers i iff all three componentwise inequalities
/// d^- <= R^-, d <= R, d^+ <= R^+ hold.
CoverageMap coverage_fuzzy(const FuzzyInstance& finst);

}  // namespace fmclp

#endif  // FMCLP_INSTANCE_HPP
