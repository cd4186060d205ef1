#include "fmclp/instance.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fmclp/rng.hpp"

using namespace fmclp;

namespace {

CrispInstance three_points() {
  std::istringstream in("3\n0 0 10\n3 4 20\n1 1 5\n");
  return load_points(in, PointFormat::PlainXYW);
}

}  // namespace

TEST_CASE("plain point loading") {
  std::istringstream in("2\n0 0 10\n3 4 20\n");
  const CrispInstance inst = load_points(in, PointFormat::PlainXYW);
  REQUIRE(inst.points.size() == 2);
  CHECK(inst.points[0].id == 0);
  CHECK(inst.points[0].demand == 10);
  CHECK(inst.points[1].x == 3);
  CHECK(inst.points[1].demand == 20);
  CHECK(inst.facilities.empty());
}

TEST_CASE("point loading failures") {
  {
    std::istringstream in("0\n");
    CHECK_THROWS_AS(load_points(in, PointFormat::PlainXYW), EmptyInstance);
  }
  {
    std::istringstream in("1\n0 0 ten\n");
    try {
      load_points(in, PointFormat::PlainXYW);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  {
    std::istringstream in("2\n0 0 1\n");
    CHECK_THROWS_AS(load_points(in, PointFormat::PlainXYW), ParseError);
  }
  {
    std::istringstream in("1\n0 0 -3\n");
    CHECK_THROWS_AS(load_points(in, PointFormat::PlainXYW), DomainViolation);
  }
}

TEST_CASE("point serialization round-trips") {
  const CrispInstance inst = three_points();
  std::ostringstream out;
  serialize_points(out, inst);
  std::istringstream back(out.str());
  const CrispInstance again = load_points(back, PointFormat::PlainXYW);
  REQUIRE(again.points.size() == inst.points.size());
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    CHECK(again.points[i].x == inst.points[i].x);
    CHECK(again.points[i].y == inst.points[i].y);
    CHECK(again.points[i].demand == inst.points[i].demand);
  }
}

TEST_CASE("co-located facilities with unit costs") {
  const CrispInstance inst =
      make_facilities(three_points(), 0.5, CostSpec::unit());
  REQUIRE(inst.facilities.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(inst.facilities[j].cost == 1.0);
    CHECK(inst.facilities[j].radius == 0.5);
    CHECK(inst.facilities[j].x == inst.points[j].x);
    CHECK(inst.facilities[j].y == inst.points[j].y);
  }
  CHECK_THROWS_AS(make_facilities(three_points(), 0.0, CostSpec::unit()),
                  DomainViolation);
}

TEST_CASE("explicit costs") {
  const CrispInstance inst = make_facilities(
      three_points(), 1.0, CostSpec::explicit_costs({100, 250, 5}));
  CHECK(inst.facilities[0].cost == 100);
  CHECK(inst.facilities[1].cost == 250);
  CHECK(inst.facilities[2].cost == 5);
  CHECK_THROWS_AS(make_facilities(three_points(), 1.0,
                                  CostSpec::explicit_costs({1, -2, 3})),
                  DomainViolation);
  CHECK_THROWS_AS(
      make_facilities(three_points(), 1.0, CostSpec::explicit_costs({1})),
      DomainViolation);
}

TEST_CASE("normal random costs are positive, reproducible, centered") {
  const int n = 400;
  std::ostringstream big;
  big << n << '\n';
  Rng coords(11);
  for (int i = 0; i < n; ++i) {
    big << coords.uniform(0, 30) << ' ' << coords.uniform(0, 30) << " 1\n";
  }
  std::istringstream in1(big.str()), in2(big.str());
  const auto inst1 = make_facilities(load_points(in1, PointFormat::PlainXYW),
                                     1.0, CostSpec::normal_random(100, 10, 7));
  const auto inst2 = make_facilities(load_points(in2, PointFormat::PlainXYW),
                                     1.0, CostSpec::normal_random(100, 10, 7));
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    CHECK(inst1.facilities[j].cost > 0.0);
    CHECK(inst1.facilities[j].cost == inst2.facilities[j].cost);
    sum += inst1.facilities[j].cost;
  }
  // Sample mean within 3 standard errors of 100.
  CHECK(std::fabs(sum / n - 100.0) < 3.0 * 10.0 / std::sqrt(double(n)));
}

TEST_CASE("budget modes") {
  CrispInstance unit = make_facilities(three_points(), 1.0, CostSpec::unit());
  CHECK(set_budget(unit, BudgetMode::cardinality(2)).budget == 2.0);
  CHECK_THROWS_AS(set_budget(unit, BudgetMode::cardinality(0)),
                  DomainViolation);
  CHECK_THROWS_AS(set_budget(unit, BudgetMode::cardinality(4)),
                  DomainViolation);

  CrispInstance priced = make_facilities(
      three_points(), 1.0, CostSpec::explicit_costs({90, 110, 95}));
  CHECK(set_budget(priced, BudgetMode::sum_smallest(2)).budget == 185.0);
  CHECK_THROWS_AS(set_budget(priced, BudgetMode::cardinality(1)),
                  ModeMismatch);
  CHECK(set_budget(priced, BudgetMode::explicit_value(42)).budget == 42.0);
  CHECK_THROWS_AS(set_budget(priced, BudgetMode::explicit_value(-1)),
                  DomainViolation);

  // Nondecreasing in p.
  double prev = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const double b = set_budget(priced, BudgetMode::sum_smallest(p)).budget;
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("distances") {
  const CrispInstance inst =
      make_facilities(three_points(), 1.0, CostSpec::unit());
  const auto d = distances(inst);
  CHECK(d[0][1] == 5.0);          // 3-4-5 triangle
  CHECK(d[0][0] == 0.0);          // co-located
  CHECK(d[0][2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d[1][0] == d[0][1]);      // symmetric for co-located facilities
}

TEST_CASE("fuzzify bounds, mids, determinism") {
  const CrispInstance crisp = set_budget(
      make_facilities(three_points(), 0.5, CostSpec::unit()),
      BudgetMode::cardinality(2));
  const double spread = 0.2;
  const FuzzyInstance f1 = fuzzify(crisp, spread, 42);
  const FuzzyInstance f2 = fuzzify(crisp, spread, 42);
  const FuzzyInstance f3 = fuzzify(crisp, spread, 43);

  // Determinism for a fixed seed.
  CHECK(f1.demands == f2.demands);
  CHECK(f1.budget == f2.budget);
  CHECK(f1.distances == f2.distances);
  CHECK(f1.demands != f3.demands);

  // Mids preserved bitwise, extremes within the spread.
  for (std::size_t i = 0; i < crisp.points.size(); ++i) {
    const Tfn& w = f1.demands[i];
    const double a = crisp.points[i].demand;
    CHECK(w.mid == a);
    CHECK(w.lo >= (1.0 - spread) * a);
    CHECK(w.hi <= (1.0 + spread) * a);
    CHECK(w.lo <= w.mid);
    CHECK(w.mid <= w.hi);
  }
  CHECK(f1.budget.mid == crisp.budget);

  // A zero parameter fuzzifies to the degenerate triplet.
  CrispInstance zero_demand = crisp;
  zero_demand.points[0].demand = 0.0;
  const FuzzyInstance fz = fuzzify(zero_demand, spread, 1);
  CHECK(fz.demands[0] == Tfn(0, 0, 0));

  CHECK_THROWS_AS(fuzzify(crisp, 0.0, 1), DomainViolation);
  CHECK_THROWS_AS(fuzzify(crisp, 1.5, 1), DomainViolation);
}

TEST_CASE("crisp coverage, boundary inclusive") {
  CrispInstance inst;
  inst.points = {{0, 0.0, 0.0, 1.0}};
  inst.facilities = {{0, 0.4, 0.0, 0.5, 1.0},
                     {1, 0.5, 0.0, 0.5, 1.0},
                     {2, 0.6, 0.0, 0.5, 1.0}};
  const CoverageMap cov = coverage_crisp(inst);
  CHECK(cov.covering(0) == std::vector<int>{0, 1});
}

TEST_CASE("fuzzy coverage needs all three inequalities") {
  FuzzyInstance finst;
  finst.center.points = {{0, 0.0, 0.0, 1.0}};
  finst.center.facilities = {{0, 0.0, 0.0, 0.5, 1.0},
                             {1, 0.0, 0.0, 0.5, 1.0}};
  finst.demands = {Tfn(1, 1, 1)};
  finst.distances = {{Tfn(0.3, 0.4, 0.5), Tfn(0.3, 0.4, 0.55)}};
  finst.radii = {Tfn(0.35, 0.5, 0.6), Tfn(0.35, 0.5, 0.5)};
  finst.costs = {Tfn(1, 1, 1), Tfn(1, 1, 1)};
  finst.budget = Tfn(1, 1, 1);
  const CoverageMap cov = coverage_fuzzy(finst);
  CHECK(cov.covering(0) == std::vector<int>{0});  // 0.55 > 0.5 excludes 1
}

TEST_CASE("fuzzy coverage is a subset of crisp coverage") {
  Rng rng(5);
  std::ostringstream text;
  text << 25 << '\n';
  for (int i = 0; i < 25; ++i) {
    text << rng.uniform(0, 5) << ' ' << rng.uniform(0, 5) << ' '
         << rng.uniform(1, 10) << '\n';
  }
  std::istringstream in(text.str());
  const CrispInstance crisp = set_budget(
      make_facilities(load_points(in, PointFormat::PlainXYW), 0.8,
                      CostSpec::unit()),
      BudgetMode::cardinality(3));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FuzzyInstance finst = fuzzify(crisp, 0.2, seed);
    const CoverageMap fuzzy = coverage_fuzzy(finst);
    const CoverageMap crisp_cov = coverage_crisp(crisp);
    for (std::size_t i = 0; i < fuzzy.size(); ++i) {
      for (int j : fuzzy.covering(i)) {
        const auto& super = crisp_cov.covering(i);
        CHECK(std::find(super.begin(), super.end(), j) != super.end());
      }
    }
  }
}
