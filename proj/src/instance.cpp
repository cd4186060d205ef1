#include "fmclp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fmclp/canonical.hpp"
#include "fmclp/rng.hpp"

namespace fmclp {

namespace {

// Parses one whitespace-separated double; reports the stream line on failure.
double parse_double(std::istringstream& fields, int line, const char* what) {
  std::string tok;
  if (!(fields >> tok)) {
    throw ParseError(line, std::string("missing ") + what);
  }
  double v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  }
  return v;
}

}  // namespace

double CrispInstance::total_demand() const {
  double total = 0.0;
  for (const auto& p : points) total += p.demand;
  return total;
}

CrispInstance load_points(std::istream& in, PointFormat format) {
  if (format == PointFormat::Canonical) {
    CrispInstance inst = canonical::read_points(in);
    if (inst.points.empty()) throw EmptyInstance("instance has no points");
    return inst;
  }

  std::string line;
  int lineno = 0;
  long n = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string tok;
    if (!(fields >> tok)) continue;  // skip blank lines
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || n < 0) {
      throw ParseError(lineno, "expected point count, got '" + tok + "'");
    }
    break;
  }
  if (n < 0) throw ParseError(lineno == 0 ? 1 : lineno, "missing point count");
  if (n == 0) throw EmptyInstance("instance has no points");

  CrispInstance inst;
  inst.points.reserve(static_cast<std::size_t>(n));
  while (static_cast<long>(inst.points.size()) < n) {
    if (!std::getline(in, line)) {
      throw ParseError(lineno + 1, "unexpected end of input");
    }
    ++lineno;
    std::istringstream fields(line);
    if (fields.str().find_first_not_of(" \t\r\n") == std::string::npos) {
      continue;
    }
    DemandPoint p;
    p.id = static_cast<int>(inst.points.size());
    p.x = parse_double(fields, lineno, "x coordinate");
    p.y = parse_double(fields, lineno, "y coordinate");
    p.demand = parse_double(fields, lineno, "demand");
    if (p.demand < 0.0) {
      throw DomainViolation("negative demand at line " +
                            std::to_string(lineno));
    }
    inst.points.push_back(p);
  }
  return inst;
}

void serialize_points(std::ostream& out, const CrispInstance& inst) {
  out << inst.points.size() << '\n';
  for (const auto& p : inst.points) {
    out << format_double(p.x) << ' ' << format_double(p.y) << ' '
        << format_double(p.demand) << '\n';
  }
}

CrispInstance make_facilities(CrispInstance inst, double radius,
                              const CostSpec& costs) {
  if (!(radius > 0.0)) {
    throw DomainViolation("coverage radius must be positive");
  }
  const std::size_t n = inst.points.size();
  std::vector<double> cost_values(n, 1.0);
  switch (costs.kind) {
    case CostSpec::Kind::Unit:
      break;
    case CostSpec::Kind::NormalRandom: {
      Rng rng(costs.seed);
      for (auto& c : cost_values) {
        c = std::max(0.0, rng.normal(costs.mean, costs.sd));
      }
      break;
    }
    case CostSpec::Kind::Explicit: {
      if (costs.values.size() != n) {
        throw DomainViolation("explicit cost list has " +
                              std::to_string(costs.values.size()) +
                              " entries for " + std::to_string(n) +
                              " facilities");
      }
      for (double c : costs.values) {
        if (c < 0.0) throw DomainViolation("negative explicit cost");
      }
      cost_values = costs.values;
      break;
    }
  }

  inst.facilities.clear();
  inst.facilities.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Facility f;
    f.id = static_cast<int>(i);
    f.x = inst.points[i].x;
    f.y = inst.points[i].y;
    f.radius = radius;
    f.cost = cost_values[i];
    inst.facilities.push_back(f);
  }
  return inst;
}

CrispInstance set_budget(CrispInstance inst, const BudgetMode& mode) {
  const int m = static_cast<int>(inst.facilities.size());
  switch (mode.kind) {
    case BudgetMode::Kind::Cardinality: {
      if (mode.p < 1 || mode.p > m) {
        throw DomainViolation("cardinality parameter out of range");
      }
      for (const auto& f : inst.facilities) {
        if (f.cost != 1.0) {
          throw ModeMismatch(
              "cardinality budget requires unit costs; facility " +
              std::to_string(f.id) + " costs " + format_double(f.cost));
        }
      }
      inst.budget = static_cast<double>(mode.p);
      break;
    }
    case BudgetMode::Kind::SumSmallest: {
      if (mode.p < 1 || mode.p > m) {
        throw DomainViolation("budget parameter out of range");
      }
      std::vector<double> sorted;
      sorted.reserve(inst.facilities.size());
      for (const auto& f : inst.facilities) sorted.push_back(f.cost);
      std::sort(sorted.begin(), sorted.end());
      double b = 0.0;
      for (int i = 0; i < mode.p; ++i) b += sorted[static_cast<std::size_t>(i)];
      inst.budget = b;
      break;
    }
    case BudgetMode::Kind::Explicit: {
      if (mode.value < 0.0) throw DomainViolation("negative budget");
      inst.budget = mode.value;
      break;
    }
  }
  return inst;
}

std::vector<std::vector<double>> distances(const CrispInstance& inst) {
  std::vector<std::vector<double>> d(inst.points.size());
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    d[i].resize(inst.facilities.size());
    for (std::size_t j = 0; j < inst.facilities.size(); ++j) {
      const double dx = inst.points[i].x - inst.facilities[j].x;
      const double dy = inst.points[i].y - inst.facilities[j].y;
      d[i][j] = std::hypot(dx, dy);
    }
  }
  return d;
}

namespace {

Tfn fuzzify_value(double a, double spread, Rng& rng) {
  const double lo = rng.uniform((1.0 - spread) * a, a);
  const double hi = rng.uniform(a, (1.0 + spread) * a);
  return Tfn(lo, a, hi);
}

}  // namespace

FuzzyInstance fuzzify(const CrispInstance& inst, double spread,
                      std::uint64_t seed) {
  if (!(spread > 0.0) || !(spread <= 1.0)) {
    throw DomainViolation("spread must lie in (0, 1]");
  }
  for (const auto& p : inst.points) {
    if (p.demand < 0.0) throw DomainViolation("negative demand");
  }
  for (const auto& f : inst.facilities) {
    if (!(f.radius > 0.0)) throw DomainViolation("nonpositive radius");
    if (f.cost < 0.0) throw DomainViolation("negative cost");
  }
  if (inst.budget < 0.0) throw DomainViolation("negative budget");

  FuzzyInstance out;
  out.center = inst;
  out.seed = seed;
  out.spread = spread;

  Rng rng(seed);
  out.demands.reserve(inst.points.size());
  for (const auto& p : inst.points) {
    out.demands.push_back(fuzzify_value(p.demand, spread, rng));
  }
  const auto d = distances(inst);
  out.distances.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.distances[i].reserve(d[i].size());
    for (double dij : d[i]) {
      out.distances[i].push_back(fuzzify_value(dij, spread, rng));
    }
  }
  out.radii.reserve(inst.facilities.size());
  for (const auto& f : inst.facilities) {
    out.radii.push_back(fuzzify_value(f.radius, spread, rng));
  }
  out.costs.reserve(inst.facilities.size());
  for (const auto& f : inst.facilities) {
    out.costs.push_back(fuzzify_value(f.cost, spread, rng));
  }
  out.budget = fuzzify_value(inst.budget, spread, rng);
  return out;
}

CoverageMap coverage_crisp(const CrispInstance& inst) {
  const auto d = distances(inst);
  CoverageMap cov;
  cov.sets.resize(inst.points.size());
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    for (std::size_t j = 0; j < inst.facilities.size(); ++j) {
      if (d[i][j] <= inst.facilities[j].radius) {
        cov.sets[i].push_back(static_cast<int>(j));
      }
    }
  }
  return cov;
}

CoverageMap coverage_fuzzy(const FuzzyInstance& finst) {
  CoverageMap cov;
  cov.sets.resize(finst.center.points.size());
  for (std::size_t i = 0; i < finst.center.points.size(); ++i) {
    for (std::size_t j = 0; j < finst.center.facilities.size(); ++j) {
      const Tfn& dij = finst.distances[i][j];
      const Tfn& rj = finst.radii[j];
      if (dij.lo <= rj.lo && dij.mid <= rj.mid && dij.hi <= rj.hi) {
        cov.sets[i].push_back(static_cast<int>(j));
      }
    }
  }
  return cov;
}

}  // namespace fmclp
