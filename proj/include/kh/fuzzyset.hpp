#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "kh/errors.hpp"

namespace kh {

enum class Role { antecedent, consequent, observation };

constexpr std::string_view role_name(Role r) {
  switch (r) {
    case Role::antecedent: return "antecedent";
    case Role::consequent: return "consequent";
    case Role::observation: return "observation";
  }
  return "?";
}

/// Convex, normal, piece-wise linear fuzzy set with four characteristic
/// points a1 <= a2 <= a3 <= a4. Support is [a1, a4], core is [a2, a3];
/// a2 == a3 encodes a triangle. The role tag is used for reporting only.
struct Trapezoid {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  Role role = Role::antecedent;

  /// Horizontal run of the rising flank (support to core).
  double left_slope() const { return a2 - a1; }
  /// Horizontal run of the falling flank (core to support).
  double right_slope() const { return a4 - a3; }

  bool same_points(const Trapezoid& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4;
  }

  friend bool operator==(const Trapezoid& x, const Trapezoid& y) {
    return x.same_points(y) && x.role == y.role;
  }
};

/// Crisp cut of a fuzzy set at one membership level. An interval with
/// lo > hi is representable (see the abnormality reporting in khcore)
/// but never produced by alpha_cut itself.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;

  bool valid() const { return lo <= hi; }
};

inline Trapezoid make_trapezoid(double a1, double a2, double a3, double a4,
                                Role role = Role::antecedent) {
  if (!(a1 <= a2 && a2 <= a3 && a3 <= a4)) {
    throw NotCnf("set [" + std::to_string(a1) + ", " + std::to_string(a2) +
                 ", " + std::to_string(a3) + ", " + std::to_string(a4) +
                 "] is not convex and normal (points must be non-decreasing)");
  }
  return Trapezoid{a1, a2, a3, a4, role};
}

inline Interval alpha_cut(const Trapezoid& s, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw OutOfRange("alpha level " + std::to_string(alpha) +
                     " outside [0, 1]");
  }
  return Interval{s.a1 + alpha * (s.a2 - s.a1), s.a4 + alpha * (s.a3 - s.a4),
                  alpha};
}

/// Strict ordering of CNF sets: every cut of `a` lies strictly left of the
/// matching cut of `b`, on both endpoints. Both endpoints are affine in
/// alpha, so checking the four characteristic points is enough.
inline bool precedes(const Trapezoid& a, const Trapezoid& b) {
  return a.a1 < b.a1 && a.a2 < b.a2 && a.a3 < b.a3 && a.a4 < b.a4;
}

/// Distance of the infima of two cuts taken at the same level.
inline double lower_distance(const Interval& a, const Interval& b) {
  if (a.level != b.level) {
    throw LevelMismatch("lower_distance across levels " +
                        std::to_string(a.level) + " and " +
                        std::to_string(b.level));
  }
  return std::fabs(b.lo - a.lo);
}

/// Distance of the suprema of two cuts taken at the same level.
inline double upper_distance(const Interval& a, const Interval& b) {
  if (a.level != b.level) {
    throw LevelMismatch("upper_distance across levels " +
                        std::to_string(a.level) + " and " +
                        std::to_string(b.level));
  }
  return std::fabs(b.hi - a.hi);
}

}  // namespace kh
