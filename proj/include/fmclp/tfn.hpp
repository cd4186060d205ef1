/**
 * @file tfn.hpp
 * @brief Triangular fuzzy numbers: representation, alpha-cuts, arithmetic,
 *        and the LU partial order.
 *
 * A triangular fuzzy number (TFN) is identified with its triplet
 * (lo, mid, hi), lo <= mid <= hi: membership rises linearly from lo to the
 * apex at mid and falls linearly back to zero at hi. A crisp value p is the
 * degenerate triplet (p, p, p). All demand, distance, radius, cost and
 * budget data in the library flow through this type.
 */

#ifndef FMCLP_TFN_HPP
#define FMCLP_TFN_HPP

#include <string>

#include "fmclp/errors.hpp"

namespace fmclp {

/// Triangular fuzzy number (lo, mid, hi) with lo <= mid <= hi.
struct Tfn {
  double lo = 0.0;
  double mid = 0.0;
  double hi = 0.0;

  Tfn() = default;

  /// Validating constructor; throws OrderViolation unless lo <= mid <= hi.
  Tfn(double lo, double mid, double hi);

  /// Embeds a crisp real as the degenerate triplet (v, v, v).
  static Tfn crisp(double v) { return Tfn(v, v, v); }

  /// A TFN is nonnegative iff its left extreme is >= 0.
  [[nodiscard]] bool nonnegative() const { return lo >= 0.0; }

  bool operator==(const Tfn&) const = default;
};

/// Closed interval [lo, hi]; the alpha-cut of a fuzzy number.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo, double hi);  // throws OrderViolation if lo > hi

  bool operator==(const Interval&) const = default;
};

/// Outcome of comparing two TFNs under the LU order. The order is partial:
/// Incomparable is a first-class result, not an error, because dominance
/// filters and the solver branch on it.
enum class OrderRelation { LessOrEqual, GreaterOrEqual, Equal, Incomparable };

/// Alpha-cut [lo + a(mid - lo), hi - a(hi - mid)] for a in [0, 1].
/// Throws DomainViolation outside [0, 1].
Interval alpha_cut(const Tfn& t, double alpha);

/// Componentwise sum of triplets.
Tfn add(const Tfn& a, const Tfn& b);

/// Scalar multiple; a negative factor reverses the triplet so the result
/// stays ordered.
Tfn scale(double factor, const Tfn& t);

/// Componentwise product, valid for nonnegative operands only.
/// Throws NegativityViolation when either operand has lo < 0.
Tfn mul_nonneg(const Tfn& a, const Tfn& b);

/// LU order on triplets: LessOrEqual iff all three components of a are <=
/// those of b, GreaterOrEqual symmetric, Equal iff both, else Incomparable.
/// Comparisons are exact (no tolerance): instance data reaches this point
/// without error-amplifying arithmetic.
OrderRelation compare(const Tfn& a, const Tfn& b);

/// Interval sum [a.lo + b.lo, a.hi + b.hi].
Interval interval_add(const Interval& a, const Interval& b);

/// General interval product (min/max over the four endpoint products).
/// Check utility for the alpha-cut consistency of mul_nonneg; the production
/// product for TFNs is always the triplet rule.
Interval interval_mul(const Interval& a, const Interval& b);

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double v);

/// Textual form "(lo, mid, hi)" with round-trip precision.
std::string to_string(const Tfn& t);
std::string to_string(const Interval& iv);
std::string to_string(OrderRelation r);

}  // namespace fmclp

#endif  // FMCLP_TFN_HPP
