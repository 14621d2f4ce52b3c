#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kh/fuzzyset.hpp"

namespace kh {

struct Rule {
  Trapezoid antecedent;
  Trapezoid consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Two ordered rules and an observation strictly between the antecedents.
/// Aggregate construction performs no checks; use make_problem for inputs
/// that must honour the ordering invariants.
struct InterpolationProblem {
  Rule rule1;
  Rule rule2;
  Trapezoid observation;

  friend bool operator==(const InterpolationProblem&,
                         const InterpolationProblem&) = default;
};

inline InterpolationProblem make_problem(Trapezoid a1, Trapezoid b1,
                                         Trapezoid a2, Trapezoid b2,
                                         Trapezoid obs) {
  a1.role = Role::antecedent;
  a2.role = Role::antecedent;
  b1.role = Role::consequent;
  b2.role = Role::consequent;
  obs.role = Role::observation;
  if (!precedes(a1, obs)) {
    throw OrderingViolation("observation does not strictly follow the first antecedent");
  }
  if (!precedes(obs, a2)) {
    throw OrderingViolation("observation does not strictly precede the second antecedent");
  }
  if (!precedes(b1, b2)) {
    throw OrderingViolation("first consequent does not strictly precede the second");
  }
  return InterpolationProblem{Rule{a1, b1}, Rule{a2, b2}, obs};
}

/// Ascending membership levels; must start at 0 and end at 1.
class AlphaGrid {
public:
  explicit AlphaGrid(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2 || levels_.front() != 0.0 || levels_.back() != 1.0) {
      throw InvalidGrid("alpha grid must run from 0 to 1");
    }
    for (std::size_t i = 1; i < levels_.size(); ++i) {
      if (!(levels_[i] > levels_[i - 1])) {
        throw InvalidGrid("alpha grid levels must be strictly increasing");
      }
    }
  }

  /// The eleven-level grid 0.0, 0.1, ..., 1.0.
  static AlphaGrid standard() {
    return AlphaGrid({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  }

  /// Levels 0, step, 2*step, ... capped with 1.
  static AlphaGrid with_step(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
      throw OutOfRange("grid step " + std::to_string(step) +
                       " outside (0, 1]");
    }
    std::vector<double> levels;
    for (int k = 0;; ++k) {
      const double a = k * step;
      if (a >= 1.0 - 1e-12) break;
      levels.push_back(a);
    }
    levels.push_back(1.0);
    return AlphaGrid(std::move(levels));
  }

  const std::vector<double>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

private:
  std::vector<double> levels_;
};

/// One cut of the interpolated conclusion. The flank distances of the
/// observation to the two antecedents split the matching consequent
/// distances in the same ratio, independently per endpoint.
inline Interval conclusion_cut(const InterpolationProblem& p, double alpha) {
  const Interval a1 = alpha_cut(p.rule1.antecedent, alpha);
  const Interval a2 = alpha_cut(p.rule2.antecedent, alpha);
  const Interval b1 = alpha_cut(p.rule1.consequent, alpha);
  const Interval b2 = alpha_cut(p.rule2.consequent, alpha);
  const Interval obs = alpha_cut(p.observation, alpha);

  const double dl1 = lower_distance(obs, a1);
  const double dl2 = lower_distance(obs, a2);
  const double du1 = upper_distance(obs, a1);
  const double du2 = upper_distance(obs, a2);
  if (dl1 + dl2 == 0.0 || du1 + du2 == 0.0) {
    throw DegenerateRules(alpha, "antecedent flanks coincide with the observation at alpha=" +
                                     std::to_string(alpha));
  }
  const double lo = (dl1 * b2.lo + dl2 * b1.lo) / (dl1 + dl2);
  const double hi = (du1 * b2.hi + du2 * b1.hi) / (du1 + du2);
  return Interval{lo, hi, alpha};
}

/// Conclusion assembled over a grid. Cuts with lo > hi are kept verbatim
/// and only flagged: clamping them would corrupt downstream deviation
/// measurements. Nesting of cuts across levels is likewise reported, not
/// enforced, because the method can produce non-convex assemblies.
struct Conclusion {
  std::vector<Interval> cuts;  // ascending level; first at 0, last at 1
  std::array<double, 4> characteristic{};  // [lo(0), lo(1), hi(1), hi(0)]

  bool abnormal(std::size_t i) const { return !cuts[i].valid(); }

  bool all_valid() const {
    for (const Interval& c : cuts) {
      if (!c.valid()) return false;
    }
    return true;
  }

  std::size_t abnormal_count() const {
    std::size_t n = 0;
    for (const Interval& c : cuts) n += c.valid() ? 0 : 1;
    return n;
  }

  /// True when higher cuts are contained in lower ones.
  bool nested() const {
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (cuts[i].lo < cuts[i - 1].lo || cuts[i].hi > cuts[i - 1].hi) {
        return false;
      }
    }
    return true;
  }
};

inline Conclusion interpolate(const InterpolationProblem& p,
                              const AlphaGrid& grid) {
  Conclusion out;
  out.cuts.reserve(grid.size());
  for (double alpha : grid.levels()) {
    out.cuts.push_back(conclusion_cut(p, alpha));
  }
  const Interval& support = out.cuts.front();
  const Interval& core = out.cuts.back();
  out.characteristic = {support.lo, core.lo, core.hi, support.hi};
  return out;
}

}  // namespace kh
