#include "fmclp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fmclp/rng.hpp"
#include "oracle.hpp"

using namespace fmclp;

namespace {

// Three points, two facilities: facility 0 covers points 0 and 1,
// facility 1 covers point 2.
Problem toy_problem() {
  Problem p;
  p.coverage.sets = {{0}, {0}, {1}};
  p.demand = {Tfn(1, 2, 3), Tfn(2, 4, 6), Tfn(1, 1, 1)};
  p.cost = {Tfn(1, 1, 1), Tfn(1, 1, 1)};
  p.budget = Tfn(1, 1, 1);
  return p;
}

// Random problem with arbitrary coverage structure; facilities and points
// are independent, so |J| and |I| differ.
Problem random_problem(std::uint64_t seed, int max_points, int max_facilities) {
  Rng rng(seed);
  const int n = 3 + static_cast<int>(rng.uniform01() * (max_points - 3));
  const int m = 2 + static_cast<int>(rng.uniform01() * (max_facilities - 2));
  CrispInstance inst;
  for (int i = 0; i < n; ++i) {
    inst.points.push_back({i, rng.uniform(0, 10), rng.uniform(0, 10),
                           std::floor(rng.uniform(1, 100))});
  }
  for (int j = 0; j < m; ++j) {
    inst.facilities.push_back({j, rng.uniform(0, 10), rng.uniform(0, 10),
                               rng.uniform(2, 5),
                               std::max(0.0, rng.normal(100, 10))});
  }
  std::vector<double> costs;
  for (const auto& f : inst.facilities) costs.push_back(f.cost);
  std::sort(costs.begin(), costs.end());
  const int p = 1 + static_cast<int>(rng.uniform01() * (m - 1));
  for (int k = 0; k < p; ++k) inst.budget += costs[static_cast<std::size_t>(k)];
  return Problem::from_fuzzy(fuzzify(inst, 0.2, seed ^ 0x9e3779b9ULL));
}

}  // namespace

TEST_CASE("evaluate forces coverage from the open set") {
  const Problem p = toy_problem();

  const Solution empty = evaluate(p, {});
  CHECK(empty.objectives == ObjectiveTriple{0, 0, 0});
  CHECK(empty.z == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(empty.budget_feasible);

  const Solution s0 = evaluate(p, {0});
  CHECK(s0.objectives == ObjectiveTriple{3, 6, 9});
  CHECK(s0.z == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(s0.served == Tfn(3, 6, 9));

  Problem generous = p;
  generous.budget = Tfn(2, 2, 2);
  const Solution all = evaluate(generous, {0, 1});
  CHECK(all.objectives == ObjectiveTriple{4, 7, 10});
  CHECK(all.budget_feasible);

  const Solution infeasible = evaluate(p, {0, 1});
  CHECK_FALSE(infeasible.budget_feasible);

  CHECK_THROWS_AS(evaluate(p, {5}), UnknownFacility);
  CHECK_THROWS_AS(evaluate(p, {-1}), UnknownFacility);
}

TEST_CASE("zero budget admits only the empty set") {
  Problem p = toy_problem();
  p.budget = Tfn(0, 0, 0);
  const Solution sol = solve_scalar(p, ScalarObjective::single(2));
  CHECK(sol.open.empty());
  CHECK(sol.objectives == ObjectiveTriple{0, 0, 0});

  CHECK(ideal_point(p) == ObjectiveTriple{0, 0, 0});
}

TEST_CASE("single-objective optimum on the toy problem") {
  const Problem p = toy_problem();
  const Solution sol = solve_scalar(p, ScalarObjective::single(2));
  CHECK(sol.open == std::vector<int>{0});
  CHECK(sol.objectives.f2 == 6);
  CHECK(sol.scalar_value == 6);

  CHECK(ideal_point(p) == ObjectiveTriple{3, 6, 9});
}

TEST_CASE("ideal point generally unattainable") {
  // argmax of F1 and F3 differ: facility 0 gives (5,5,5), facility 1 (1,5,9).
  Problem p;
  p.coverage.sets = {{0}, {1}};
  p.demand = {Tfn(5, 5, 5), Tfn(1, 5, 9)};
  p.cost = {Tfn(1, 1, 1), Tfn(1, 1, 1)};
  p.budget = Tfn(1, 1, 1);
  const ObjectiveTriple ideal = ideal_point(p);
  CHECK(ideal == ObjectiveTriple{5, 5, 9});
  const auto entries = oracle::enumerate(p);
  for (const auto& e : entries) CHECK_FALSE(e.F == ideal);
}

TEST_CASE("attainable ideal gives zero Tchebycheff value") {
  const Problem p = toy_problem();
  const ObjectiveTriple ideal = ideal_point(p);
  const Solution sol = solve_scalar(
      p, ScalarObjective::aug_tcheby({1, 1, 1, 0.001}, ideal));
  CHECK(sol.scalar_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.objectives == ideal);

  CHECK(csp1(p, ideal).scalar_value == doctest::Approx(0.0));
  CHECK(cspinf(p, ideal).scalar_value == doctest::Approx(0.0));
  CHECK(csp1(p, ideal).open == std::vector<int>{0});
}

TEST_CASE("invalid objectives are rejected") {
  const Problem p = toy_problem();
  CHECK_THROWS_AS(solve_scalar(p, ScalarObjective::single(0)),
                  DomainViolation);
  CHECK_THROWS_AS(ScalarObjective::single(4), DomainViolation);
  CHECK_THROWS_AS(
      ScalarObjective::aug_tcheby({-1, 0, 0, 0}, ObjectiveTriple{}),
      DomainViolation);
}

TEST_CASE("crisp mode reproduces the classical optimum") {
  CrispInstance inst;
  inst.points = {{0, 0, 0, 10}, {1, 1, 0, 20}, {2, 5, 5, 35}};
  inst.facilities = {{0, 0, 0, 1.5, 1}, {1, 5, 5, 1.5, 1}};
  inst.budget = 1;
  const Problem p = Problem::from_crisp(inst);
  const Solution sol = solve_scalar(p, ScalarObjective::single(2));
  CHECK(sol.open == std::vector<int>{1});  // 35 beats 10+20

  // A degenerate (crisp-embedded) fuzzy problem solves identically.
  FuzzyInstance finst;
  finst.center = inst;
  finst.demands = {Tfn::crisp(10), Tfn::crisp(20), Tfn::crisp(35)};
  const auto d = distances(inst);
  finst.distances.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      finst.distances[i].push_back(Tfn::crisp(d[i][j]));
    }
  }
  finst.radii = {Tfn::crisp(1.5), Tfn::crisp(1.5)};
  finst.costs = {Tfn::crisp(1), Tfn::crisp(1)};
  finst.budget = Tfn::crisp(1);
  const Solution same = solve_scalar(Problem::from_fuzzy(finst),
                                     ScalarObjective::single(2));
  CHECK(same.open == sol.open);
  CHECK(same.objectives == sol.objectives);
}

TEST_CASE("solver matches enumeration on random instances") {
  int solves = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Problem p = random_problem(seed, 25, 10);
    const auto entries = oracle::enumerate(p);
    REQUIRE(!entries.empty());
    const ObjectiveTriple enum_ideal = oracle::ideal_of(entries);

    const ObjectiveTriple ideal = ideal_point(p);
    CHECK(std::fabs(ideal.f1 - enum_ideal.f1) <= 1e-9);
    CHECK(std::fabs(ideal.f2 - enum_ideal.f2) <= 1e-9);
    CHECK(std::fabs(ideal.f3 - enum_ideal.f3) <= 1e-9);

    for (int r = 1; r <= 3; ++r) {
      const Solution got = solve_scalar(p, ScalarObjective::single(r));
      const auto& want = oracle::best(
          entries,
          [r](const ObjectiveTriple& F) { return F.component(r); }, true);
      CHECK(values_close(got.scalar_value, want.F.component(r)));
      CHECK(got.open == want.open);
      CHECK(got.objectives == want.F);
      ++solves;
    }
    for (const WeightVector& w : std::vector<WeightVector>{
             {0, 0, 0, 1}, {1, 1, 1, 0}, {1, 1, 1, 0.001}, {1, 0, 1, 0.001}}) {
      const Solution got =
          solve_scalar(p, ScalarObjective::aug_tcheby(w, ideal));
      const auto& want = oracle::best(
          entries,
          [&](const ObjectiveTriple& F) {
            return oracle::tcheby_value(F, ideal, w);
          },
          false);
      CHECK(values_close(got.scalar_value,
                         oracle::tcheby_value(want.F, ideal, w)));
      // The Tchebycheff value never drops below zero against the true ideal.
      CHECK(got.scalar_value >= -1e-9);
      ++solves;
    }

    // Ideal dominance over every feasible solution.
    for (const auto& e : entries) {
      CHECK(e.F.f1 <= ideal.f1 + 1e-9);
      CHECK(e.F.f2 <= ideal.f2 + 1e-9);
      CHECK(e.F.f3 <= ideal.f3 + 1e-9);
    }
  }
  CHECK(solves == 40 * 7);
}

TEST_CASE("returned coverage is exactly binary and consistent") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const Problem p = random_problem(seed, 20, 8);
    const Solution sol = solve_scalar(p, ScalarObjective::single(2));
    REQUIRE(sol.z.size() == p.point_count());
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
      CHECK((sol.z[i] == 0 || sol.z[i] == 1));
      bool covered = false;
      for (int j : p.coverage.covering(i)) {
        if (std::find(sol.open.begin(), sol.open.end(), j) != sol.open.end()) {
          covered = true;
          break;
        }
      }
      CHECK(sol.z[i] == (covered ? 1 : 0));
    }
  }
}

TEST_CASE("objectives are monotone under facility addition") {
  Rng rng(123);
  for (std::uint64_t seed = 70; seed < 80; ++seed) {
    const Problem p = random_problem(seed, 20, 9);
    const int m = static_cast<int>(p.facility_count());
    std::vector<int> open;
    for (int j = 0; j < m; ++j) {
      if (rng.uniform01() < 0.3) open.push_back(j);
    }
    const Solution base = evaluate(p, open);
    for (int j = 0; j < m; ++j) {
      if (std::find(open.begin(), open.end(), j) != open.end()) continue;
      std::vector<int> bigger = open;
      bigger.push_back(j);
      const Solution grown = evaluate(p, bigger);
      CHECK(grown.objectives.f1 >= base.objectives.f1);
      CHECK(grown.objectives.f2 >= base.objectives.f2);
      CHECK(grown.objectives.f3 >= base.objectives.f3);
    }
  }
}

TEST_CASE("fuzzy feasibility implies crisp feasibility") {
  for (std::uint64_t seed = 90; seed < 95; ++seed) {
    Rng rng(seed);
    CrispInstance inst;
    for (int i = 0; i < 15; ++i) {
      inst.points.push_back({i, rng.uniform(0, 5), rng.uniform(0, 5),
                             std::floor(rng.uniform(1, 50))});
    }
    inst = make_facilities(std::move(inst), 1.0, CostSpec::unit());
    inst = set_budget(std::move(inst), BudgetMode::cardinality(4));
    const FuzzyInstance finst = fuzzify(inst, 0.2, seed);
    const Problem fuzzy = Problem::from_fuzzy(finst);
    const Problem crisp = Problem::from_crisp(inst);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> open;
      for (std::size_t j = 0; j < fuzzy.facility_count(); ++j) {
        if (rng.uniform01() < 0.25) open.push_back(static_cast<int>(j));
      }
      if (evaluate(fuzzy, open).budget_feasible) {
        CHECK(evaluate(crisp, open).budget_feasible);
      }
    }
  }
}

TEST_CASE("node log emits one line per node") {
  const Problem p = toy_problem();
  std::ostringstream log;
  SolveOptions opts;
  opts.node_log = &log;
  solve_scalar(p, ScalarObjective::single(2), opts);
  CHECK(log.str().find("node depth=") != std::string::npos);
}
