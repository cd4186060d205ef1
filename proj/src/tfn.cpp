#include "fmclp/tfn.hpp"

#include <algorithm>
#include <charconv>

namespace fmclp {

Tfn::Tfn(double lo, double mid, double hi) : lo(lo), mid(mid), hi(hi) {
  if (!(lo <= mid) || !(mid <= hi)) {
    throw OrderViolation("TFN triplet out of order: " + format_double(lo) +
                         ", " + format_double(mid) + ", " + format_double(hi));
  }
}

Interval::Interval(double lo, double hi) : lo(lo), hi(hi) {
  if (!(lo <= hi)) {
    throw OrderViolation("interval endpoints out of order: " +
                         format_double(lo) + " > " + format_double(hi));
  }
}

Interval alpha_cut(const Tfn& t, double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw DomainViolation("alpha outside [0, 1]: " + format_double(alpha));
  }
  if (alpha == 1.0) {
    return Interval(t.mid, t.mid);
  }
  double lower = t.lo + alpha * (t.mid - t.lo);
  double upper = t.hi - alpha * (t.hi - t.mid);
  // Both sides meet at the apex; clamping there absorbs the rounding of the
  // interpolation and keeps the cuts nested for increasing alpha.
  return Interval(std::min(lower, t.mid), std::max(upper, t.mid));
}

Tfn add(const Tfn& a, const Tfn& b) {
  return Tfn(a.lo + b.lo, a.mid + b.mid, a.hi + b.hi);
}

Tfn scale(double factor, const Tfn& t) {
  if (factor >= 0.0) {
    return Tfn(factor * t.lo, factor * t.mid, factor * t.hi);
  }
  return Tfn(factor * t.hi, factor * t.mid, factor * t.lo);
}

Tfn mul_nonneg(const Tfn& a, const Tfn& b) {
  if (a.lo < 0.0 || b.lo < 0.0) {
    throw NegativityViolation("mul_nonneg requires nonnegative operands, got " +
                              to_string(a) + " and " + to_string(b));
  }
  return Tfn(a.lo * b.lo, a.mid * b.mid, a.hi * b.hi);
}

OrderRelation compare(const Tfn& a, const Tfn& b) {
  const bool le = a.lo <= b.lo && a.mid <= b.mid && a.hi <= b.hi;
  const bool ge = a.lo >= b.lo && a.mid >= b.mid && a.hi >= b.hi;
  if (le && ge) return OrderRelation::Equal;
  if (le) return OrderRelation::LessOrEqual;
  if (ge) return OrderRelation::GreaterOrEqual;
  return OrderRelation::Incomparable;
}

Interval interval_add(const Interval& a, const Interval& b) {
  return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval interval_mul(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                  std::max(std::max(p1, p2), std::max(p3, p4)));
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_string(const Tfn& t) {
  return "(" + format_double(t.lo) + ", " + format_double(t.mid) + ", " +
         format_double(t.hi) + ")";
}

std::string to_string(const Interval& iv) {
  return "[" + format_double(iv.lo) + ", " + format_double(iv.hi) + "]";
}

std::string to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::LessOrEqual: return "LessOrEqual";
    case OrderRelation::GreaterOrEqual: return "GreaterOrEqual";
    case OrderRelation::Equal: return "Equal";
    case OrderRelation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

}  // namespace fmclp
