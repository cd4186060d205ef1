#include "fmclp/tfn.hpp"

#include <cmath>

#include "doctest.h"
#include "fmclp/rng.hpp"

using namespace fmclp;

namespace {

// Random valid TFN; occasionally degenerate.
Tfn random_tfn(Rng& rng, double lo_bound, double hi_bound) {
  double a = rng.uniform(lo_bound, hi_bound);
  double b = rng.uniform(lo_bound, hi_bound);
  double c = rng.uniform(lo_bound, hi_bound);
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return Tfn(a, b, c);
}

}  // namespace

TEST_CASE("triplet construction") {
  const Tfn t(2, 5, 9);
  CHECK(t.lo == 2);
  CHECK(t.mid == 5);
  CHECK(t.hi == 9);

  const Tfn crisp = Tfn::crisp(3);
  CHECK(crisp == Tfn(3, 3, 3));

  CHECK_THROWS_AS(Tfn(5, 2, 9), OrderViolation);
  CHECK_THROWS_AS(Tfn(1, 4, 3), OrderViolation);
}

TEST_CASE("alpha cuts") {
  const Tfn t(2, 5, 9);
  CHECK(alpha_cut(t, 0.5) == Interval(3.5, 7));
  CHECK(alpha_cut(t, 1) == Interval(5, 5));
  CHECK(alpha_cut(t, 0) == Interval(2, 9));
  CHECK_THROWS_AS(alpha_cut(t, -0.1), DomainViolation);
  CHECK_THROWS_AS(alpha_cut(t, 1.5), DomainViolation);
  CHECK_THROWS_AS(alpha_cut(t, std::nan("")), DomainViolation);
}

TEST_CASE("addition") {
  CHECK(add(Tfn(1, 2, 3), Tfn(4, 5, 6)) == Tfn(5, 7, 9));
  CHECK(add(Tfn(0, 0, 0), Tfn(1, 2, 3)) == Tfn(1, 2, 3));
  CHECK(add(Tfn(1, 2, 3), Tfn(1, 2, 3)) == scale(2, Tfn(1, 2, 3)));
}

TEST_CASE("scaling") {
  CHECK(scale(2, Tfn(1, 2, 3)) == Tfn(2, 4, 6));
  CHECK(scale(0, Tfn(1, 2, 3)) == Tfn(0, 0, 0));
  CHECK(scale(-1, Tfn(1, 2, 3)) == Tfn(-3, -2, -1));
}

TEST_CASE("nonnegative product") {
  CHECK(mul_nonneg(Tfn(1, 2, 3), Tfn(2, 3, 4)) == Tfn(2, 6, 12));
  CHECK(mul_nonneg(Tfn(0, 0, 0), Tfn(5, 6, 7)) == Tfn(0, 0, 0));
  CHECK(mul_nonneg(Tfn(2, 3, 4), Tfn(1, 1, 1)) == Tfn(2, 3, 4));
  CHECK_THROWS_AS(mul_nonneg(Tfn(-1, 0, 1), Tfn(1, 1, 1)),
                  NegativityViolation);
}

TEST_CASE("LU order") {
  CHECK(compare(Tfn(1, 2, 3), Tfn(1, 2, 3)) == OrderRelation::Equal);
  CHECK(compare(Tfn(1, 2, 3), Tfn(0, 5, 6)) == OrderRelation::Incomparable);
  CHECK(compare(Tfn(1, 2, 3), Tfn(2, 3, 4)) == OrderRelation::LessOrEqual);
  CHECK(compare(Tfn(2, 3, 4), Tfn(1, 2, 3)) == OrderRelation::GreaterOrEqual);
  // Served demand of two incomparable Pareto solutions.
  CHECK(compare(Tfn(2437.80, 3290, 3970.53), Tfn(2392.47, 3250, 3971.95)) ==
        OrderRelation::Incomparable);
}

TEST_CASE("order and alpha-cut properties") {
  Rng rng(20240811);
  for (int it = 0; it < 1000; ++it) {
    const Tfn a = random_tfn(rng, 0.0, 100.0);
    const Tfn b = random_tfn(rng, 0.0, 100.0);

    // Reflexivity and antisymmetry.
    CHECK(compare(a, a) == OrderRelation::Equal);
    if (compare(a, b) == OrderRelation::Equal) CHECK(a == b);

    // Nonnegativity matches the order against zero.
    const auto vs_zero = compare(Tfn(0, 0, 0), a);
    CHECK((a.lo >= 0) == (vs_zero == OrderRelation::LessOrEqual ||
                          vs_zero == OrderRelation::Equal));

    // Nested cuts.
    const double a1 = rng.uniform01();
    const double a2 = rng.uniform01();
    const double lo_alpha = std::min(a1, a2);
    const double hi_alpha = std::max(a1, a2);
    const Interval outer = alpha_cut(a, lo_alpha);
    const Interval inner = alpha_cut(a, hi_alpha);
    CHECK(outer.lo <= inner.lo);
    CHECK(inner.hi <= outer.hi);

    // Endpoint and apex consistency with interval arithmetic.
    for (double alpha : {0.0, 1.0}) {
      const Interval ia = alpha_cut(a, alpha);
      const Interval ib = alpha_cut(b, alpha);
      CHECK(alpha_cut(add(a, b), alpha) == interval_add(ia, ib));
      CHECK(alpha_cut(mul_nonneg(a, b), alpha) == interval_mul(ia, ib));
    }
  }
}

TEST_CASE("transitivity through LessOrEqual") {
  Rng rng(7);
  for (int it = 0; it < 1000; ++it) {
    const Tfn a = random_tfn(rng, -50.0, 50.0);
    Tfn b = add(a, random_tfn(rng, 0.0, 10.0));
    Tfn c = add(b, random_tfn(rng, 0.0, 10.0));
    const auto ab = compare(a, b);
    const auto bc = compare(b, c);
    CHECK((ab == OrderRelation::LessOrEqual || ab == OrderRelation::Equal));
    CHECK((bc == OrderRelation::LessOrEqual || bc == OrderRelation::Equal));
    const auto ac = compare(a, c);
    CHECK((ac == OrderRelation::LessOrEqual || ac == OrderRelation::Equal));
  }
}

TEST_CASE("scaling composes") {
  Rng rng(99);
  for (int it = 0; it < 1000; ++it) {
    const Tfn t = random_tfn(rng, -100.0, 100.0);
    const double l1 = rng.uniform(-4.0, 4.0);
    const double l2 = rng.uniform(-4.0, 4.0);
    const Tfn nested = scale(l1, scale(l2, t));
    const Tfn direct = scale(l1 * l2, t);
    CHECK(nested.lo == doctest::Approx(direct.lo).epsilon(1e-12));
    CHECK(nested.mid == doctest::Approx(direct.mid).epsilon(1e-12));
    CHECK(nested.hi == doctest::Approx(direct.hi).epsilon(1e-12));
  }
}

TEST_CASE("textual form") {
  CHECK(to_string(Tfn(2, 5, 9)) == "(2, 5, 9)");
  CHECK(to_string(Tfn(0.1, 0.25, 0.5)) == "(0.1, 0.25, 0.5)");
  CHECK(to_string(Interval(3.5, 7)) == "[3.5, 7]");
  CHECK(to_string(OrderRelation::Incomparable) == "Incomparable");
}
