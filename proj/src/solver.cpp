#include "fmclp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <tuple>

namespace fmclp {

namespace {

constexpr double kValueEps = 1e-9;  // pruning slack on scalar values

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

bool values_close(double a, double b) {
  const double tol =
      std::max(1e-9, 1e-6 * std::max(std::fabs(a), std::fabs(b)));
  return std::fabs(a - b) <= tol;
}

Problem Problem::from_crisp(const CrispInstance& inst) {
  Problem p;
  p.coverage = coverage_crisp(inst);
  p.demand.reserve(inst.points.size());
  for (const auto& pt : inst.points) {
    if (pt.demand < 0.0) throw DomainViolation("negative demand");
    p.demand.push_back(Tfn::crisp(pt.demand));
  }
  p.cost.reserve(inst.facilities.size());
  for (const auto& f : inst.facilities) {
    if (f.cost < 0.0) throw DomainViolation("negative cost");
    p.cost.push_back(Tfn::crisp(f.cost));
  }
  if (inst.budget < 0.0) throw DomainViolation("negative budget");
  p.budget = Tfn::crisp(inst.budget);
  return p;
}

Problem Problem::from_fuzzy(const FuzzyInstance& finst) {
  Problem p;
  p.coverage = coverage_fuzzy(finst);
  p.demand = finst.demands;
  p.cost = finst.costs;
  p.budget = finst.budget;
  for (const auto& w : p.demand) {
    if (!w.nonnegative()) throw DomainViolation("negative demand TFN");
  }
  for (const auto& c : p.cost) {
    if (!c.nonnegative()) throw DomainViolation("negative cost TFN");
  }
  if (!p.budget.nonnegative()) throw DomainViolation("negative budget TFN");
  return p;
}

ScalarObjective ScalarObjective::single(int r) {
  if (r < 1 || r > 3) throw DomainViolation("objective index outside 1..3");
  ScalarObjective o;
  o.kind = Kind::Single;
  o.which = r;
  return o;
}

ScalarObjective ScalarObjective::aug_tcheby(const WeightVector& w,
                                            const ObjectiveTriple& ideal) {
  if (w.l1 < 0.0 || w.l2 < 0.0 || w.l3 < 0.0 || w.rho < 0.0) {
    throw DomainViolation("Tchebycheff weights must be nonnegative");
  }
  ScalarObjective o;
  o.kind = Kind::AugTcheby;
  o.weights = w;
  o.ideal = ideal;
  return o;
}

Solution evaluate(const Problem& problem, const std::vector<int>& open) {
  const int m = static_cast<int>(problem.facility_count());
  std::vector<std::uint8_t> is_open(static_cast<std::size_t>(m), 0);
  Solution sol;
  sol.open = open;
  std::sort(sol.open.begin(), sol.open.end());
  sol.open.erase(std::unique(sol.open.begin(), sol.open.end()),
                 sol.open.end());
  for (int j : sol.open) {
    if (j < 0 || j >= m) {
      throw UnknownFacility("facility index " + std::to_string(j) +
                            " outside 0.." + std::to_string(m - 1));
    }
    is_open[static_cast<std::size_t>(j)] = 1;
  }

  sol.z.assign(problem.point_count(), 0);
  for (std::size_t i = 0; i < problem.point_count(); ++i) {
    for (int j : problem.coverage.covering(i)) {
      if (is_open[static_cast<std::size_t>(j)]) {
        sol.z[i] = 1;
        break;
      }
    }
    if (sol.z[i]) {
      sol.objectives.f1 += problem.demand[i].lo;
      sol.objectives.f2 += problem.demand[i].mid;
      sol.objectives.f3 += problem.demand[i].hi;
    }
  }

  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  for (int j : sol.open) {
    const Tfn& c = problem.cost[static_cast<std::size_t>(j)];
    c1 += c.lo;
    c2 += c.mid;
    c3 += c.hi;
  }
  sol.budget_feasible = c1 <= problem.budget.lo + kBudgetSlack &&
                        c2 <= problem.budget.mid + kBudgetSlack &&
                        c3 <= problem.budget.hi + kBudgetSlack;
  sol.served = sol.objectives.as_tfn();
  return sol;
}

// ---------------------------------------------------------------------------
// Branch and bound over facility open/close decisions.
//
// Preprocessing drops points with empty coverage (their z is 0 in every
// solution) and facilities that cover nothing, and collapses facilities with
// identical coverage and cost triple onto the smallest index. Branching
// follows a precomputed score (mid-demand covered per unit of mid cost,
// descending); the search dives depth-first, opening first.
//
// The bound at a node takes the smallest of three admissible relaxations of
// each objective component:
//   (a) the total demand reachable through undecided facilities that
//       individually fit all three residual budget rows;
//   (b) a Lagrangian relaxation of the coverage constraints: for any
//       nonnegative multipliers, uncovered demand above the multiplier plus
//       a fractional knapsack (mid budget row) over the facilities'
//       multiplier mass bounds every completion. The mid-objective
//       multipliers are refined by a few Polyak subgradient steps along the
//       search path; the outer components reuse them rescaled.
//   (c) the same Lagrangian evaluated at multipliers equal to the component
//       weights, which reduces to a knapsack over static coverage gains.
// (a) alone degenerates on cardinality budgets, where every facility fits
// individually until the residual hits zero.
//
// Each node also completes its open set greedily under the budgets; the
// completion both seeds the incumbent and supplies the subgradient target.
// At the root, facilities whose forced-open Lagrangian bound falls strictly
// below the incumbent can never appear in an optimal or tied solution and
// are removed before the search proper.
//
// Ties on the scalar value resolve toward the lexicographically smallest
// sorted open set; a subtree whose bound ties the incumbent is explored only
// when its lexicographically smallest conceivable completion could still win
// the tie.
// ---------------------------------------------------------------------------

namespace {

struct SearchFacility {
  int orig = 0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  std::vector<int> cover;  // kept-point indices
};

struct SearchSpace {
  std::vector<SearchFacility> fac;  // branching order
  std::vector<double> w1, w2, w3;   // kept-point demand triples
  double b1 = 0.0, b2 = 0.0, b3 = 0.0;
};

SearchSpace prepare(const Problem& problem) {
  SearchSpace s;
  s.b1 = problem.budget.lo;
  s.b2 = problem.budget.mid;
  s.b3 = problem.budget.hi;

  // Keep only points that some facility covers.
  std::vector<int> point_index(problem.point_count(), -1);
  for (std::size_t i = 0; i < problem.point_count(); ++i) {
    if (!problem.coverage.covering(i).empty()) {
      point_index[i] = static_cast<int>(s.w1.size());
      s.w1.push_back(problem.demand[i].lo);
      s.w2.push_back(problem.demand[i].mid);
      s.w3.push_back(problem.demand[i].hi);
    }
  }

  std::vector<SearchFacility> all(problem.facility_count());
  for (std::size_t j = 0; j < problem.facility_count(); ++j) {
    all[j].orig = static_cast<int>(j);
    all[j].c1 = problem.cost[j].lo;
    all[j].c2 = problem.cost[j].mid;
    all[j].c3 = problem.cost[j].hi;
  }
  for (std::size_t i = 0; i < problem.point_count(); ++i) {
    for (int j : problem.coverage.covering(i)) {
      all[static_cast<std::size_t>(j)].cover.push_back(point_index[i]);
    }
  }

  // Drop facilities covering nothing; deduplicate identical
  // (coverage, cost triple) keeping the smallest index.
  std::vector<const SearchFacility*> kept;
  for (const auto& f : all) {
    if (!f.cover.empty()) kept.push_back(&f);
  }
  std::sort(kept.begin(), kept.end(),
            [](const SearchFacility* a, const SearchFacility* b) {
              return std::tie(a->cover, a->c1, a->c2, a->c3, a->orig) <
                     std::tie(b->cover, b->c1, b->c2, b->c3, b->orig);
            });
  std::vector<SearchFacility> unique;
  for (const auto* f : kept) {
    if (!unique.empty() && unique.back().cover == f->cover &&
        unique.back().c1 == f->c1 && unique.back().c2 == f->c2 &&
        unique.back().c3 == f->c3) {
      continue;  // duplicate; the sort put the smallest index first
    }
    unique.push_back(*f);
  }

  // Branching order: covered mid-demand per mid cost, descending.
  std::vector<double> score(unique.size());
  for (std::size_t k = 0; k < unique.size(); ++k) {
    double gain = 0.0;
    for (int i : unique[k].cover) gain += s.w2[static_cast<std::size_t>(i)];
    score[k] = unique[k].c2 > 0.0
                   ? gain / unique[k].c2
                   : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(unique.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return unique[a].orig < unique[b].orig;
  });
  s.fac.reserve(order.size());
  for (std::size_t k : order) s.fac.push_back(std::move(unique[k]));
  return s;
}

// What the engine optimizes: a single objective, the Tchebycheff distance,
// or the objective sum with a componentwise floor (the Pareto test).
struct EngineObjective {
  enum class Mode { SingleMax, Tcheby, SumFloor };

  Mode mode = Mode::SingleMax;
  int r = 2;
  WeightVector weights;
  ObjectiveTriple ideal;
  ObjectiveTriple floor;

  [[nodiscard]] bool maximize() const { return mode != Mode::Tcheby; }

  [[nodiscard]] bool admissible(double f1, double f2, double f3) const {
    if (mode != Mode::SumFloor) return true;
    return f1 >= floor.f1 - kValueEps && f2 >= floor.f2 - kValueEps &&
           f3 >= floor.f3 - kValueEps;
  }

  [[nodiscard]] double value(double f1, double f2, double f3) const {
    switch (mode) {
      case Mode::SingleMax:
        return r == 1 ? f1 : (r == 2 ? f2 : f3);
      case Mode::SumFloor:
        return f1 + f2 + f3;
      case Mode::Tcheby: {
        const double d1 = ideal.f1 - f1;
        const double d2 = ideal.f2 - f2;
        const double d3 = ideal.f3 - f3;
        const double worst = std::max(
            {weights.l1 * d1, weights.l2 * d2, weights.l3 * d3});
        return worst + weights.rho * (d1 + d2 + d3);
      }
    }
    return 0.0;
  }

  // Admissible node bound from componentwise objective upper bounds.
  // Returns -inf (max) when the floor is out of reach.
  [[nodiscard]] double bound(double u1, double u2, double u3) const {
    switch (mode) {
      case Mode::SingleMax:
        return r == 1 ? u1 : (r == 2 ? u2 : u3);
      case Mode::SumFloor:
        if (u1 < floor.f1 - kValueEps || u2 < floor.f2 - kValueEps ||
            u3 < floor.f3 - kValueEps) {
          return -std::numeric_limits<double>::infinity();
        }
        return u1 + u2 + u3;
      case Mode::Tcheby: {
        // Every feasible F is dominated by the ideal, so the per-objective
        // deviations are clamped at zero before combining.
        const double d1 = std::max(0.0, ideal.f1 - u1);
        const double d2 = std::max(0.0, ideal.f2 - u2);
        const double d3 = std::max(0.0, ideal.f3 - u3);
        const double worst = std::max(
            {weights.l1 * d1, weights.l2 * d2, weights.l3 * d3});
        return worst + weights.rho * (d1 + d2 + d3);
      }
    }
    return 0.0;
  }
};

struct Incumbent {
  bool present = false;
  double value = 0.0;
  std::vector<int> open_orig;  // sorted original facility ids
};

// Dual state of the coverage relaxation: one multiplier per uncovered point
// plus scalar multipliers for the lo and hi budget rows (the mid row stays
// inside the knapsack). Warm-started along the search path.
struct DualState {
  std::vector<double> lam;
  double mu1 = 0.0;  // lo budget row
  double mu3 = 0.0;  // hi budget row
  double nu = 0.0;   // cardinality cut on the undecided count
};

class Engine {
 public:
  Engine(SearchSpace space, const EngineObjective& objective,
         std::ostream* log)
      : s_(std::move(space)), obj_(objective), log_(log) {
    refine_r_ = obj_.mode == EngineObjective::Mode::SingleMax ? obj_.r : 2;
    const std::size_t n = s_.w1.size();
    covered_.assign(n, 0);
    reach_.assign(n, 0);
    cova_.assign(n, 0);
    grad_.assign(n, 0.0);
    closed_.assign(s_.fac.size(), 0);
    open_mark_.assign(s_.fac.size(), 0);
    // Point weights steering the greedy completion, per objective sense.
    greedy_w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (obj_.mode) {
        case EngineObjective::Mode::SingleMax:
          greedy_w_[i] = obj_.r == 1 ? s_.w1[i]
                                     : (obj_.r == 2 ? s_.w2[i] : s_.w3[i]);
          break;
        case EngineObjective::Mode::SumFloor:
          greedy_w_[i] = s_.w1[i] + s_.w2[i] + s_.w3[i];
          break;
        case EngineObjective::Mode::Tcheby: {
          const double k1 = obj_.weights.l1 + obj_.weights.rho;
          const double k2 = obj_.weights.l2 + obj_.weights.rho;
          const double k3 = obj_.weights.l3 + obj_.weights.rho;
          greedy_w_[i] = k1 * s_.w1[i] + k2 * s_.w2[i] + k3 * s_.w3[i];
          if (k1 + k2 + k3 <= 0.0) greedy_w_[i] = s_.w2[i];
          break;
        }
      }
    }
  }

  std::vector<int> run() {
    DualState dual;
    dual.lam.resize(s_.w1.size());
    const std::vector<double>& wr =
        refine_r_ == 1 ? s_.w1 : (refine_r_ == 2 ? s_.w2 : s_.w3);
    auto reset_dual = [&] {
      for (std::size_t i = 0; i < dual.lam.size(); ++i) {
        dual.lam[i] = 0.5 * wr[i];
      }
      dual.mu1 = dual.mu3 = dual.nu = 0.0;
    };
    reset_dual();
    std::vector<int> open;

    // Root pass: greedy incumbent, swap improvement, then removal of
    // facilities that cannot appear in any optimal or tied solution, and a
    // re-evaluation on the smaller space.
    Eval root = eval_node(open, dual, 32);
    root_local_search();
    reset_dual();
    root = eval_node(open, dual, kRootIters);
    root_local_search();
    if (root.has_fit && inc_.present &&
        s_.fac.size() > static_cast<std::size_t>(kFixingThreshold)) {
      if (fix_facilities(dual)) {
        reset_dual();
        closed_.assign(s_.fac.size(), 0);
        open_mark_.assign(s_.fac.size(), 0);
        root = eval_node(open, dual, kRootIters);
        root_local_search();
      }
    }
    if (root.has_fit && !prunable(root.bound, open)) {
      dfs(open, root.branch, dual, root.bound);
    }
    if (!inc_.present) {
      // Only reachable through an unattainable Pareto-test floor.
      throw InfeasibleCandidate("no feasible solution meets the floor");
    }
    return inc_.open_orig;
  }

 private:
  static constexpr double kSlack = kBudgetSlack;
  static constexpr int kRootIters = 1200;
  static constexpr int kChildIters = 8;
  static constexpr int kFixingThreshold = 24;
  static constexpr std::size_t kTieRescueCap = 64;
  static constexpr double kStepScale = 0.7;

  struct Eval {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double bound = 0.0;
    bool has_fit = false;
    int branch = -1;  // facility the relaxation loads most
  };

  bool fits(const SearchFacility& f, double r1, double r2, double r3) const {
    return f.c1 <= r1 + kSlack && f.c2 <= r2 + kSlack && f.c3 <= r3 + kSlack;
  }

  std::vector<int> to_orig_sorted(const std::vector<int>& positions) const {
    std::vector<int> ids;
    ids.reserve(positions.size());
    for (int pos : positions) {
      ids.push_back(s_.fac[static_cast<std::size_t>(pos)].orig);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  void consider(const std::vector<int>& open_positions, double f1, double f2,
                double f3) {
    if (!obj_.admissible(f1, f2, f3)) return;
    const double v = obj_.value(f1, f2, f3);
    if (!inc_.present) {
      set_incumbent(v, open_positions);
      return;
    }
    const bool better = obj_.maximize() ? v > inc_.value : v < inc_.value;
    if (better) {
      set_incumbent(v, open_positions);
    } else if (v == inc_.value) {
      auto ids = to_orig_sorted(open_positions);
      if (lex_less(ids, inc_.open_orig)) {
        inc_.open_orig = std::move(ids);
      }
    }
  }

  void set_incumbent(double v, const std::vector<int>& open_positions) {
    inc_.present = true;
    inc_.value = v;
    inc_.open_orig = to_orig_sorted(open_positions);
  }

  // One-swap improvement of the incumbent. Root only; accepted neighbors go
  // through consider(), so value and tie-breaking rules stay consistent.
  // Uses only the coverage scratch, leaving the root's fit list and
  // capacities intact for the fixing pass.
  void root_local_search() {
    if (!inc_.present || s_.fac.empty()) return;
    std::vector<int> pos_of(s_.fac.size());
    std::vector<int> current;
    {
      // Incumbent ids back to positions in the current space.
      std::vector<int> by_orig;
      for (std::size_t k = 0; k < s_.fac.size(); ++k) pos_of[k] = -1;
      for (std::size_t k = 0; k < s_.fac.size(); ++k) {
        by_orig.push_back(s_.fac[k].orig);
      }
      for (int id : inc_.open_orig) {
        for (std::size_t k = 0; k < s_.fac.size(); ++k) {
          if (by_orig[k] == id) {
            current.push_back(static_cast<int>(k));
            break;
          }
        }
      }
      if (current.size() != inc_.open_orig.size()) return;
    }

    auto set_fits = [&](const std::vector<int>& set) {
      double c1 = 0.0, c2 = 0.0, c3 = 0.0;
      for (int pos : set) {
        const auto& f = s_.fac[static_cast<std::size_t>(pos)];
        c1 += f.c1;
        c2 += f.c2;
        c3 += f.c3;
      }
      return c1 <= s_.b1 + kSlack && c2 <= s_.b2 + kSlack &&
             c3 <= s_.b3 + kSlack;
    };
    auto set_value = [&](const std::vector<int>& set, double f[3]) {
      ++stamp_;
      for (int pos : set) {
        for (int i : s_.fac[static_cast<std::size_t>(pos)].cover) {
          covered_[static_cast<std::size_t>(i)] = stamp_;
        }
      }
      f[0] = f[1] = f[2] = 0.0;
      for (std::size_t i = 0; i < s_.w1.size(); ++i) {
        if (covered_[i] == stamp_) {
          f[0] += s_.w1[i];
          f[1] += s_.w2[i];
          f[2] += s_.w3[i];
        }
      }
    };

    for (int pass = 0; pass < 20; ++pass) {
      bool improved = false;
      for (std::size_t idx = 0; idx < current.size() && !improved; ++idx) {
        for (std::size_t pos = 0; pos < s_.fac.size() && !improved; ++pos) {
          if (std::find(current.begin(), current.end(),
                        static_cast<int>(pos)) != current.end()) {
            continue;
          }
          std::vector<int> next = current;
          next[idx] = static_cast<int>(pos);
          if (!set_fits(next)) continue;
          double f[3];
          set_value(next, f);
          if (!obj_.admissible(f[0], f[1], f[2])) continue;
          const double v = obj_.value(f[0], f[1], f[2]);
          const bool better =
              obj_.maximize() ? v > inc_.value : v < inc_.value;
          if (better) {
            consider(next, f[0], f[1], f[2]);
            current = std::move(next);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }

  // A subtree whose bound ties the incumbent matters only if its
  // lexicographically smallest conceivable completion still wins the tie.
  // Above the rescue cap the hunt for the lexicographically smallest tied
  // set is abandoned (block-structured instances tie combinatorially);
  // results stay deterministic, resolving ties by search order instead.
  bool tie_can_win(const std::vector<int>& open) const {
    if (s_.fac.size() > kTieRescueCap) return false;
    if (open.empty()) return true;
    std::vector<int> ids = to_orig_sorted(open);
    const int top = ids.back();
    std::vector<int> extra;
    for (std::size_t j = 0; j < s_.fac.size(); ++j) {
      if (closed_[j] || open_mark_[j]) continue;
      const int orig = s_.fac[j].orig;
      if (orig < top) extra.push_back(orig);
    }
    if (!extra.empty()) {
      ids.insert(ids.end(), extra.begin(), extra.end());
      std::sort(ids.begin(), ids.end());
    }
    return lex_less(ids, inc_.open_orig);
  }

  bool prunable(double bound, const std::vector<int>& open) const {
    if (!inc_.present) return false;
    // Objective comparisons use 1e-6 relative or 1e-9 absolute, whichever
    // is looser; the capacity slack inflates bounds by up to the knapsack
    // density times 1e-9, which the relative term dominates.
    const double eps = std::max(kValueEps, 1e-6 * std::fabs(inc_.value));
    // The Lagrangian and knapsack bounds carry summation-order noise of a
    // few ulps, so the tie-rescue zone reaches slightly below the incumbent.
    const double noise = 1e-12 * std::max(1.0, std::fabs(inc_.value));
    if (obj_.maximize()) {
      if (bound > inc_.value + eps) return false;
      if (bound < inc_.value - noise) return true;
    } else {
      if (bound < inc_.value - eps) return false;
      if (bound > inc_.value + noise) return true;
    }
    return !tie_can_win(open);
  }

  static double row_cost(const SearchFacility& f, int row) {
    return row == 1 ? f.c1 : (row == 2 ? f.c2 : f.c3);
  }

  // Fractional knapsack over fit_ with the given per-facility values, using
  // one budget row's costs and residual capacity. Records the fractional
  // take in ybar_ when asked.
  double knapfrac(const std::vector<double>& value, int row, double capacity,
                  bool record_take) {
    knap_order_.resize(fit_.size());
    for (std::size_t k = 0; k < fit_.size(); ++k) knap_order_[k] = k;
    std::sort(knap_order_.begin(), knap_order_.end(),
              [&](std::size_t a, std::size_t b) {
                const double ca =
                    row_cost(s_.fac[static_cast<std::size_t>(fit_[a])], row);
                const double cb =
                    row_cost(s_.fac[static_cast<std::size_t>(fit_[b])], row);
                const bool fa = ca <= 0.0;
                const bool fb = cb <= 0.0;
                if (fa != fb) return fa;  // zero-cost first
                if (fa && fb) return a < b;
                const double ra = value[a] / ca;
                const double rb = value[b] / cb;
                if (ra != rb) return ra > rb;
                return a < b;
              });
    if (record_take) ybar_.assign(fit_.size(), 0.0);
    double total = 0.0;
    double cap = std::max(0.0, capacity);
    for (std::size_t k : knap_order_) {
      const double c = row_cost(s_.fac[static_cast<std::size_t>(fit_[k])], row);
      if (c <= 0.0) {  // free items sort first and always fit
        if (value[k] > 0.0) {
          total += value[k];
          if (record_take) ybar_[k] = 1.0;
        }
        continue;
      }
      if (value[k] <= 0.0) break;  // density-sorted; the rest cannot help
      if (cap <= 0.0) break;
      const double take = std::min(1.0, cap / c);
      cap -= take * c;
      total += take * value[k];
      if (record_take) ybar_[k] = take;
    }
    return total;
  }

  // Lagrangian value for component r at multipliers lam_r(i) and budget-row
  // multipliers mu1/mu3, over the current stamped node state: uncovered
  // demand above the multiplier, plus the smaller of (a) the mu-priced mid
  // knapsack of multiplier mass with the lo/hi rows dualized, and (b) the
  // best single-row knapsack. Valid for arbitrary nonnegative multipliers;
  // when asked, records the mu-variant's fractional take in ybar_.
  template <class LamFn>
  double lagrangian(int r, LamFn lam_of, double mu1, double mu3, double nu,
                    bool record_take, bool min_rows) {
    const std::vector<double>& w = r == 1 ? s_.w1 : (r == 2 ? s_.w2 : s_.w3);
    double zpart = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (covered_[i] == stamp_) continue;
      const double li = lam_of(i);
      if (w[i] > li) zpart += w[i] - li;
    }
    lamval_.assign(fit_.size(), 0.0);
    for (std::size_t k = 0; k < fit_.size(); ++k) {
      const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
      double mass = 0.0;
      for (int i : f.cover) {
        const auto ui = static_cast<std::size_t>(i);
        if (covered_[ui] != stamp_) mass += lam_of(ui);
      }
      lamval_[k] = mass;
    }
    double best;
    if (mu1 > 0.0 || mu3 > 0.0 || nu > 0.0) {
      adj_.resize(fit_.size());
      for (std::size_t k = 0; k < fit_.size(); ++k) {
        const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
        adj_[k] = lamval_[k] - mu1 * f.c1 - mu3 * f.c3 - nu;
      }
      best = mu1 * cap_[1] + mu3 * cap_[3] + nu * static_cast<double>(kx_) +
             knapfrac(adj_, 2, cap_[2], record_take);
    } else {
      best = knapfrac(lamval_, 2, cap_[2], record_take);
    }
    if (min_rows) {
      for (int m = 1; m <= 3; m += 2) {
        best = std::min(best, knapfrac(lamval_, m, cap_[m], false));
      }
    }
    return zpart + best;
  }

  // Polyak subgradient descent on the coverage and budget-row multipliers
  // for the mid component. `target` is a known attainable completion gain;
  // iteration stops early once the bound closes onto it. Returns the best
  // Lagrangian value seen and leaves the best multipliers in `dual`.
  double refine_multipliers(DualState& dual, double target, int iters) {
    const int r = refine_r_;
    const std::vector<double>& wr =
        r == 1 ? s_.w1 : (r == 2 ? s_.w2 : s_.w3);
    std::vector<double>& lam = dual.lam;
    auto lam_at = [&lam](std::size_t i) { return lam[i]; };
    double current =
        lagrangian(r, lam_at, dual.mu1, dual.mu3, dual.nu, true, false);
    double best = current;
    DualState best_dual = dual;
    double scale = kStepScale;
    int stall = 0;
    for (int it = 0; it < iters; ++it) {
      if (best <= target + 1e-9) break;
      // Subgradient at the current multipliers: coverage mass of the
      // knapsack take minus the indicator of an active demand term, and the
      // residual slack of the dualized budget rows.
      std::fill(grad_.begin(), grad_.end(), 0.0);
      double used1 = 0.0, used3 = 0.0;
      for (std::size_t k = 0; k < fit_.size(); ++k) {
        if (ybar_[k] <= 0.0) continue;
        const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
        used1 += ybar_[k] * f.c1;
        used3 += ybar_[k] * f.c3;
        for (int i : f.cover) {
          const auto ui = static_cast<std::size_t>(i);
          if (covered_[ui] != stamp_) grad_[ui] += ybar_[k];
        }
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < lam.size(); ++i) {
        if (covered_[i] == stamp_) {
          grad_[i] = 0.0;
          continue;
        }
        if (lam[i] < wr[i]) grad_[i] -= 1.0;
        norm2 += grad_[i] * grad_[i];
      }
      double count = 0.0;
      for (std::size_t k = 0; k < fit_.size(); ++k) count += ybar_[k];
      const double gmu1 = cap_[1] - used1;
      const double gmu3 = cap_[3] - used3;
      const double gnu = static_cast<double>(kx_) - count;
      norm2 += gmu1 * gmu1 + gmu3 * gmu3 + gnu * gnu;
      if (norm2 <= 0.0) break;
      const double step = scale * (current - target) / norm2;
      if (step <= 0.0) break;
      for (std::size_t i = 0; i < lam.size(); ++i) {
        lam[i] = std::max(0.0, lam[i] - step * grad_[i]);
      }
      dual.mu1 = std::max(0.0, dual.mu1 - step * gmu1);
      dual.mu3 = std::max(0.0, dual.mu3 - step * gmu3);
      dual.nu = std::max(0.0, dual.nu - step * gnu);
      current =
          lagrangian(r, lam_at, dual.mu1, dual.mu3, dual.nu, true, false);
      if (current < best - 1e-12) {
        best = current;
        best_dual = dual;
        stall = 0;
      } else if (++stall >= 30) {
        scale = std::max(0.01, scale * 0.5);  // halve on stalled descent
        stall = 0;
      }
    }
    dual = best_dual;
    // The returned bound also tries each raw budget row at the best duals.
    return std::min(
        best, lagrangian(r, lam_at, dual.mu1, dual.mu3, dual.nu, true, true));
  }

  // Componentwise upper bound of every completion, taking the smallest of
  // the reachable total, the refined Lagrangian (rescaled multipliers), and
  // the static-multiplier Lagrangian.
  double component_bound(int r, double total_r, double f_r,
                         const DualState& dual) {
    const std::vector<double>& w = r == 1 ? s_.w1 : (r == 2 ? s_.w2 : s_.w3);
    const std::vector<double>& wb =
        refine_r_ == 1 ? s_.w1 : (refine_r_ == 2 ? s_.w2 : s_.w3);
    const std::vector<double>& lam = dual.lam;
    auto scaled = [&](std::size_t i) {
      return wb[i] > 0.0 ? lam[i] * w[i] / wb[i] : w[i];
    };
    double cover_bound =
        lagrangian(r, scaled, dual.mu1, dual.mu3, dual.nu, false, true);
    auto stat = [&](std::size_t i) { return w[i]; };
    cover_bound = std::min(cover_bound,
                           lagrangian(r, stat, 0.0, 0.0, 0.0, false, true));
    return std::min(total_r, f_r + cover_bound);
  }

  Eval eval_node(const std::vector<int>& open, DualState& dual, int iters) {
    Eval out;
    ++stamp_;
    ++nodes_;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    for (int pos : open) {
      const auto& f = s_.fac[static_cast<std::size_t>(pos)];
      c1 += f.c1;
      c2 += f.c2;
      c3 += f.c3;
      for (int i : f.cover) {
        covered_[static_cast<std::size_t>(i)] = stamp_;
        cova_[static_cast<std::size_t>(i)] = stamp_;
      }
    }
    // Summing in point order keeps values bitwise identical for open sets
    // with the same coverage, so exact ties are recognized as ties.
    for (std::size_t i = 0; i < s_.w1.size(); ++i) {
      if (covered_[i] == stamp_) {
        out.f1 += s_.w1[i];
        out.f2 += s_.w2[i];
        out.f3 += s_.w3[i];
      }
    }
    consider(open, out.f1, out.f2, out.f3);

    const double r1 = s_.b1 - c1;
    const double r2 = s_.b2 - c2;
    const double r3 = s_.b3 - c3;
    // Capacities include the budget slack so boundary-exact completions are
    // never cut off by the relaxation.
    cap_[1] = r1 + kSlack;
    cap_[2] = r2 + kSlack;
    cap_[3] = r3 + kSlack;

    // Undecided facilities that individually fit every residual row.
    fit_.clear();
    for (std::size_t j = 0; j < s_.fac.size(); ++j) {
      if (closed_[j] || open_mark_[j]) continue;
      if (fits(s_.fac[j], r1, r2, r3)) fit_.push_back(static_cast<int>(j));
    }
    if (fit_.empty()) return out;
    out.has_fit = true;
    out.branch = fit_.front();

    // Cardinality cut: no completion can open more facilities than fit the
    // cheapest-cost prefix of any budget row.
    kx_ = static_cast<int>(fit_.size());
    for (int m = 1; m <= 3; ++m) {
      sorted_costs_.clear();
      for (int j : fit_) {
        sorted_costs_.push_back(row_cost(s_.fac[static_cast<std::size_t>(j)], m));
      }
      std::sort(sorted_costs_.begin(), sorted_costs_.end());
      double acc = 0.0;
      int count = 0;
      for (double c : sorted_costs_) {
        if (acc + c > cap_[m]) break;
        acc += c;
        ++count;
      }
      kx_ = std::min(kx_, count);
    }

    for (std::size_t k = 0; k < fit_.size(); ++k) {
      const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
      for (int i : f.cover) reach_[static_cast<std::size_t>(i)] = stamp_;
    }
    // Reachable-coverage totals summed in point order over covered and
    // reachable points together: a completion covering any subset of this
    // union sums a subsequence of the same stream, so the bound never drops
    // below an exact tie inside the subtree.
    double total1 = 0.0, total2 = 0.0, total3 = 0.0;
    for (std::size_t i = 0; i < s_.w1.size(); ++i) {
      if (covered_[i] == stamp_ || reach_[i] == stamp_) {
        total1 += s_.w1[i];
        total2 += s_.w2[i];
        total3 += s_.w3[i];
      }
    }

    // Greedy completion under the residual budgets, by greedy-weight gain
    // per unit of mid cost: incumbent candidate and subgradient target.
    a_extra_.clear();
    a_member_.assign(fit_.size(), 0);
    double ra1 = r1, ra2 = r2, ra3 = r3;
    for (;;) {
      std::size_t best = fit_.size();
      double best_ratio = 0.0;
      for (std::size_t k = 0; k < fit_.size(); ++k) {
        if (a_member_[k]) continue;
        const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
        if (!fits(f, ra1, ra2, ra3)) continue;
        double gain = 0.0;
        for (int i : f.cover) {
          if (cova_[static_cast<std::size_t>(i)] != stamp_) {
            gain += greedy_w_[static_cast<std::size_t>(i)];
          }
        }
        if (gain <= 0.0) continue;
        const double ratio =
            f.c2 > 0.0 ? gain / f.c2 : std::numeric_limits<double>::infinity();
        if (best == fit_.size() || ratio > best_ratio) {
          best = k;
          best_ratio = ratio;
        }
      }
      if (best == fit_.size()) break;
      a_member_[best] = 1;
      a_extra_.push_back(fit_[best]);
      const auto& f = s_.fac[static_cast<std::size_t>(fit_[best])];
      ra1 -= f.c1;
      ra2 -= f.c2;
      ra3 -= f.c3;
      for (int i : f.cover) cova_[static_cast<std::size_t>(i)] = stamp_;
    }
    double fa1 = out.f1, fa2 = out.f2, fa3 = out.f3;
    if (!a_extra_.empty()) {
      fa1 = fa2 = fa3 = 0.0;
      for (std::size_t i = 0; i < s_.w1.size(); ++i) {
        if (cova_[i] == stamp_) {
          fa1 += s_.w1[i];
          fa2 += s_.w2[i];
          fa3 += s_.w3[i];
        }
      }
      full_open_ = open;
      full_open_.insert(full_open_.end(), a_extra_.begin(), a_extra_.end());
      consider(full_open_, fa1, fa2, fa3);
    }

    double target = refine_r_ == 1 ? fa1 - out.f1
                    : (refine_r_ == 2 ? fa2 - out.f2 : fa3 - out.f3);
    if (obj_.mode == EngineObjective::Mode::SingleMax && inc_.present) {
      const double fr = refine_r_ == 1 ? out.f1
                        : (refine_r_ == 2 ? out.f2 : out.f3);
      target = std::max(target, inc_.value - fr);
    }
    const double refined = refine_multipliers(dual, target, iters);
    double u1 = total1, u2 = total2, u3 = total3;
    if (refine_r_ == 1) {
      u1 = std::min(total1, out.f1 + refined);
    } else if (refine_r_ == 2) {
      u2 = std::min(total2, out.f2 + refined);
    } else {
      u3 = std::min(total3, out.f3 + refined);
    }
    // Only the Tchebycheff and floor modes need the other components.
    if (obj_.mode != EngineObjective::Mode::SingleMax) {
      u1 = component_bound(1, total1, out.f1, dual);
      u3 = component_bound(3, total3, out.f3, dual);
    }
    out.bound = obj_.bound(u1, u2, u3);

    // Branch on the most fractional facility of the relaxation: that is
    // where the knapsack shaves budget, so both children move the bound.
    // With an integral relaxation fall back to the most loaded facility,
    // then to the score order.
    double best_frac = 1e-9;
    double best_take = 0.0;
    int frac_branch = -1;
    int load_branch = -1;
    for (std::size_t k = 0; k < fit_.size() && k < ybar_.size(); ++k) {
      const double frac = std::min(ybar_[k], 1.0 - ybar_[k]);
      if (frac > best_frac) {
        best_frac = frac;
        frac_branch = fit_[k];
      }
      if (ybar_[k] > best_take) {
        best_take = ybar_[k];
        load_branch = fit_[k];
      }
    }
    if (frac_branch >= 0) {
      out.branch = frac_branch;
    } else if (load_branch >= 0) {
      out.branch = load_branch;
    }
    return out;
  }

  // Removes facilities whose forced-open bound is strictly worse than the
  // incumbent: they cannot appear in any optimal or tied solution, so the
  // lexicographic tie-breaking is unaffected. Requires the root node state
  // (stamps, fit_, capacities, multipliers) from the preceding eval_node.
  bool fix_facilities(const DualState& dual) {
    if (fit_.size() != s_.fac.size()) return false;  // root covers everything

    // Forced-open component bounds at the current multipliers: the demand
    // part stays, the facility contributes its full multiplier mass, and the
    // knapsack runs over the others with the capacity reduced by its cost.
    forced1_.assign(fit_.size(), 0.0);
    forced2_.assign(fit_.size(), 0.0);
    forced3_.assign(fit_.size(), 0.0);
    for (int r : {1, 2, 3}) {
      const std::vector<double>& w = r == 1 ? s_.w1 : (r == 2 ? s_.w2 : s_.w3);
      const std::vector<double>& wb =
          refine_r_ == 1 ? s_.w1 : (refine_r_ == 2 ? s_.w2 : s_.w3);
      auto lam_of = [&](std::size_t i) {
        if (r == refine_r_) return dual.lam[i];
        return wb[i] > 0.0 ? dual.lam[i] * w[i] / wb[i] : w[i];
      };
      double zpart = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double li = lam_of(i);
        if (w[i] > li) zpart += w[i] - li;
      }
      lamval_.assign(fit_.size(), 0.0);
      for (std::size_t k = 0; k < fit_.size(); ++k) {
        const auto& f = s_.fac[static_cast<std::size_t>(fit_[k])];
        double mass = 0.0;
        for (int i : f.cover) mass += lam_of(static_cast<std::size_t>(i));
        lamval_[k] = mass;
      }
      std::vector<double>& forced =
          r == 1 ? forced1_ : (r == 2 ? forced2_ : forced3_);
      forced.assign(fit_.size(), std::numeric_limits<double>::infinity());
      for (int m = 1; m <= 3; ++m) {
        // Knapsack order by this row's density, shared across the walks.
        knap_order_.resize(fit_.size());
        for (std::size_t k = 0; k < fit_.size(); ++k) knap_order_[k] = k;
        std::sort(knap_order_.begin(), knap_order_.end(),
                  [&](std::size_t a, std::size_t b) {
                    const double ca =
                        row_cost(s_.fac[static_cast<std::size_t>(fit_[a])], m);
                    const double cb =
                        row_cost(s_.fac[static_cast<std::size_t>(fit_[b])], m);
                    const bool fa = ca <= 0.0;
                    const bool fb = cb <= 0.0;
                    if (fa != fb) return fa;
                    if (fa && fb) return a < b;
                    const double ra = lamval_[a] / ca;
                    const double rb = lamval_[b] / cb;
                    if (ra != rb) return ra > rb;
                    return a < b;
                  });
        for (std::size_t k = 0; k < fit_.size(); ++k) {
          const auto& fk = s_.fac[static_cast<std::size_t>(fit_[k])];
          double capacity = cap_[m] - row_cost(fk, m);
          double total = zpart + lamval_[k];
          for (std::size_t o : knap_order_) {
            if (o == k || lamval_[o] <= 0.0) continue;
            const double c =
                row_cost(s_.fac[static_cast<std::size_t>(fit_[o])], m);
            double take = 1.0;
            if (c > 0.0) {
              if (capacity <= 0.0) break;
              take = std::min(1.0, capacity / c);
              capacity -= take * c;
            }
            total += take * lamval_[o];
          }
          forced[k] = std::min(forced[k], total);
        }
      }
    }

    std::vector<std::uint8_t> keep(s_.fac.size(), 1);
    int removed = 0;
    for (std::size_t k = 0; k < fit_.size(); ++k) {
      const double fb = obj_.bound(forced1_[k], forced2_[k], forced3_[k]);
      const bool hopeless = obj_.maximize() ? fb < inc_.value - kValueEps
                                            : fb > inc_.value + kValueEps;
      if (hopeless) {
        keep[static_cast<std::size_t>(fit_[k])] = 0;
        ++removed;
      }
    }
    if (removed == 0) return false;
    std::vector<SearchFacility> reduced;
    reduced.reserve(s_.fac.size() - static_cast<std::size_t>(removed));
    for (std::size_t j = 0; j < s_.fac.size(); ++j) {
      if (keep[j]) reduced.push_back(std::move(s_.fac[j]));
    }
    s_.fac = std::move(reduced);
    if (log_) {
      *log_ << "fixing removed=" << removed << " left=" << s_.fac.size()
            << '\n';
    }
    return true;
  }

  void dfs(std::vector<int>& open, int branch, const DualState& dual,
           double parent_bound) {
    ++depth_;
    if (log_) {
      *log_ << "node depth=" << depth_ << " open=" << open.size()
            << " bound=" << format_double(parent_bound) << " incumbent="
            << (inc_.present ? format_double(inc_.value) : "-") << '\n';
    }
    // Opened child first (greedy dive), then the closed child.
    open.push_back(branch);
    open_mark_[static_cast<std::size_t>(branch)] = 1;
    {
      DualState dual_child = dual;
      Eval opened = eval_node(open, dual_child, kChildIters);
      if (opened.has_fit && !prunable(opened.bound, open)) {
        dfs(open, opened.branch, dual_child, opened.bound);
      }
    }
    open_mark_[static_cast<std::size_t>(branch)] = 0;
    open.pop_back();

    if (prunable(parent_bound, open)) return;
    closed_[static_cast<std::size_t>(branch)] = 1;
    {
      DualState dual_child = dual;
      Eval closed_child = eval_node(open, dual_child, kChildIters);
      if (closed_child.has_fit && !prunable(closed_child.bound, open)) {
        dfs(open, closed_child.branch, dual_child, closed_child.bound);
      }
    }
    closed_[static_cast<std::size_t>(branch)] = 0;
    --depth_;
  }

  SearchSpace s_;
  EngineObjective obj_;
  std::ostream* log_;
  Incumbent inc_;
  int refine_r_ = 2;
  int stamp_ = 0;
  int depth_ = 0;
  int kx_ = 0;  // per-node cardinality cap on additional openings
  long long nodes_ = 0;
  double cap_[4] = {0, 0, 0, 0};  // per-row residual capacities, 1-indexed
  std::vector<int> covered_;
  std::vector<int> reach_;
  std::vector<int> cova_;  // covered by the greedy completion
  std::vector<double> greedy_w_;
  std::vector<double> grad_, ybar_, lamval_, adj_, sorted_costs_;
  std::vector<double> forced1_, forced2_, forced3_;
  std::vector<int> fit_;
  std::vector<std::uint8_t> closed_;     // permanently closed on this path
  std::vector<std::uint8_t> open_mark_;  // open along this path
  std::vector<int> a_extra_;
  std::vector<std::uint8_t> a_member_;
  std::vector<int> full_open_;
  std::vector<std::size_t> knap_order_;
};

Solution finish(const Problem& problem, const EngineObjective& obj,
                const std::vector<int>& open_orig) {
  Solution sol = evaluate(problem, open_orig);
  sol.scalar_value =
      obj.value(sol.objectives.f1, sol.objectives.f2, sol.objectives.f3);
  return sol;
}

}  // namespace

Solution solve_scalar(const Problem& problem, const ScalarObjective& objective,
                      const SolveOptions& options) {
  EngineObjective obj;
  if (objective.kind == ScalarObjective::Kind::Single) {
    if (objective.which < 1 || objective.which > 3) {
      throw DomainViolation("objective index outside 1..3");
    }
    obj.mode = EngineObjective::Mode::SingleMax;
    obj.r = objective.which;
  } else {
    const WeightVector& w = objective.weights;
    if (w.l1 < 0.0 || w.l2 < 0.0 || w.l3 < 0.0 || w.rho < 0.0) {
      throw DomainViolation("Tchebycheff weights must be nonnegative");
    }
    obj.mode = EngineObjective::Mode::Tcheby;
    obj.weights = w;
    obj.ideal = objective.ideal;
  }
  SearchSpace space = prepare(problem);
  Engine engine(std::move(space), obj, options.node_log);
  return finish(problem, obj, engine.run());
}

ObjectiveTriple ideal_point(const Problem& problem) {
  ObjectiveTriple ideal;
  ideal.f1 = solve_scalar(problem, ScalarObjective::single(1)).objectives.f1;
  ideal.f2 = solve_scalar(problem, ScalarObjective::single(2)).objectives.f2;
  ideal.f3 = solve_scalar(problem, ScalarObjective::single(3)).objectives.f3;
  return ideal;
}

Solution csp1(const Problem& problem, const ObjectiveTriple& ideal) {
  // Minimizing the summed deviation is the Tchebycheff objective with
  // lambda = 0 and rho = 1.
  return solve_scalar(
      problem, ScalarObjective::aug_tcheby({0.0, 0.0, 0.0, 1.0}, ideal));
}

Solution cspinf(const Problem& problem, const ObjectiveTriple& ideal) {
  // Minimizing the maximum deviation is the Tchebycheff objective with
  // lambda = (1, 1, 1) and rho = 0.
  return solve_scalar(
      problem, ScalarObjective::aug_tcheby({1.0, 1.0, 1.0, 0.0}, ideal));
}

Solution solve_sum_with_floor(const Problem& problem,
                              const ObjectiveTriple& floor,
                              const SolveOptions& options) {
  EngineObjective obj;
  obj.mode = EngineObjective::Mode::SumFloor;
  obj.floor = floor;
  SearchSpace space = prepare(problem);
  Engine engine(std::move(space), obj, options.node_log);
  return finish(problem, obj, engine.run());
}

}  // namespace fmclp
