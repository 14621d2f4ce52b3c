#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string_view>

#include "kh/flank.hpp"

namespace kh {

/// Absolute deviation below which a flank is reported as exactly linear.
inline constexpr double exactness_tolerance = 1e-9;

/// Straight line joining a flank's endpoint values at levels 0 and 1.
struct Chord {
  double v0 = 0.0;
  double v1 = 0.0;

  // Evaluated in lerp form so that value(0) == v0 and value(1) == v1
  // without rounding; deviations must vanish identically at the endpoints.
  double value(double alpha) const {
    return (1.0 - alpha) * v0 + alpha * v1;
  }
};

inline Chord chord(const FlankCoefficients& f) {
  if (f.c10 == 0.0) {
    throw DegenerateRules(0.0, "flank denominator vanishes at alpha=0");
  }
  if (f.c9 + f.c10 == 0.0) {
    throw DegenerateRules(1.0, "flank denominator vanishes at alpha=1");
  }
  return Chord{f.d3 / f.c10, (f.d1 + f.d2 + f.d3) / (f.c9 + f.c10)};
}

/// Signed gap between the rational flank and its chord at one level.
inline double deviation(const FlankCoefficients& f, double alpha) {
  return flank_value(f, alpha) - chord(f).value(alpha);
}

struct MaxDeviation {
  double argmax = 0.0;
  double magnitude = 0.0;
};

/// Largest |deviation| over [0, 1], found analytically: the deviation is
/// k*alpha*(alpha-1)/(c9*alpha + c10), so its stationary points are the
/// roots of c9*alpha^2 + 2*c10*alpha - c10. Endpoints contribute 0.
inline MaxDeviation max_deviation(const FlankCoefficients& f) {
  const Chord ch = chord(f);

  double roots[2];
  int n_roots = 0;
  if (f.c9 == 0.0) {
    roots[n_roots++] = 0.5;
  } else {
    const double disc = f.c10 * f.c10 + f.c9 * f.c10;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      roots[n_roots++] = (-f.c10 + s) / f.c9;
      roots[n_roots++] = (-f.c10 - s) / f.c9;
    }
  }

  MaxDeviation best;  // endpoints give exactly zero
  for (int i = 0; i < n_roots; ++i) {
    const double a = roots[i];
    if (!(a > 0.0 && a < 1.0)) continue;
    const double d = std::fabs(flank_value(f, a) - ch.value(a));
    if (d > best.magnitude) {
      best.magnitude = d;
      best.argmax = a;
    }
  }
  return best;
}

/// Signed span of the hyperbolic component between levels 0 and 1,
/// amplitude_numerator / (c9*c10*(c9+c10)); an upper bound on the
/// deviation. Undefined (nullopt) when any factor of the denominator
/// vanishes — rendered as "NAN" in reports.
inline std::optional<double> error_bound_signed(const FlankCoefficients& f) {
  const double den = f.c9 * f.c10 * (f.c9 + f.c10);
  if (den == 0.0) return std::nullopt;
  return amplitude_numerator(f) / den;
}

/// Magnitude of the error bound, or nullopt when undefined.
inline std::optional<double> error_bound(const FlankCoefficients& f) {
  const auto e = error_bound_signed(f);
  if (!e) return std::nullopt;
  return std::fabs(*e);
}

/// Sufficient test that the flank stays within epsilon of its chord:
/// |Q(0)| <= epsilon * |c9*c10*(c9+c10)|, with Q(0) the amplitude
/// numerator. The two sides of the inequality are kept as magnitudes so
/// the test is orientation-independent: the signed form flips with the
/// sign of c9 and would accept visibly curved flanks.
inline bool slope_check(const FlankCoefficients& f, double epsilon) {
  const double q0 = amplitude_numerator(f);
  const double scale = f.c9 * f.c10 * (f.c9 + f.c10);
  return std::fabs(q0) - epsilon * std::fabs(scale) <= 0.0;
}

/// True when the flank is an exact straight line: either the denominator
/// is constant and the quadratic term vanishes, or the hyperbolic
/// amplitude cancels.
inline bool is_linear_flank(const FlankCoefficients& f) {
  if (f.c9 == 0.0) return f.d1 == 0.0;
  const double n = amplitude_numerator(f);
  const double largest =
      std::max({std::fabs(f.d3 * f.c9 * f.c9), std::fabs(f.d2 * f.c9 * f.c10),
                std::fabs(f.d1 * f.c10 * f.c10), 1.0});
  return std::fabs(n) <= 1e-9 * largest;
}

enum class LinearityCase { c1_1, c1_2, c2, c3 };

constexpr std::string_view case_name(LinearityCase c) {
  switch (c) {
    case LinearityCase::c1_1: return "C1.1";
    case LinearityCase::c1_2: return "C1.2";
    case LinearityCase::c2: return "C2";
    case LinearityCase::c3: return "C3";
  }
  return "?";
}

using CaseSet = std::set<LinearityCase>;

struct CaseClassification {
  CaseSet cases;
  bool polynomial_left = false;
  bool polynomial_right = false;
};

/// Sufficient-condition classification of a problem.
///
///  C1.1 — both antecedent slopes equal and both consequent slopes equal.
///  C1.2 — each rule's consequent has the same points as its antecedent.
///  C2   — antecedent and observation slopes all equal.
///  C3   — antecedent, consequent and observation slopes all equal.
///
/// "Slope" is the flank run per side; conditions apply to both sides.
/// A flank is polynomial exactly when the two antecedent runs match on
/// that side (equivalently c9 = 0).
inline CaseClassification classify_case(const InterpolationProblem& p) {
  const Trapezoid& a1 = p.rule1.antecedent;
  const Trapezoid& a2 = p.rule2.antecedent;
  const Trapezoid& b1 = p.rule1.consequent;
  const Trapezoid& b2 = p.rule2.consequent;
  const Trapezoid& ob = p.observation;

  const bool aL = a1.left_slope() == a2.left_slope();
  const bool aR = a1.right_slope() == a2.right_slope();
  const bool bL = b1.left_slope() == b2.left_slope();
  const bool bR = b1.right_slope() == b2.right_slope();
  const bool obsL = aL && a1.left_slope() == ob.left_slope();
  const bool obsR = aR && a1.right_slope() == ob.right_slope();

  CaseClassification out;
  out.polynomial_left = aL;
  out.polynomial_right = aR;
  if (aL && aR && bL && bR) out.cases.insert(LinearityCase::c1_1);
  if (b1.same_points(a1) && b2.same_points(a2)) {
    out.cases.insert(LinearityCase::c1_2);
  }
  if (obsL && obsR) out.cases.insert(LinearityCase::c2);
  if (obsL && obsR && bL && bR && a1.left_slope() == b1.left_slope() &&
      a1.right_slope() == b1.right_slope()) {
    out.cases.insert(LinearityCase::c3);
  }
  return out;
}

/// Everything the analyzer knows about one flank.
struct FlankAnalysis {
  FlankCoefficients coeffs;
  Chord endpoints;
  double max_dev = 0.0;
  double max_dev_argmax = 0.0;
  std::optional<double> bound_signed;  // nullopt: undefined, print "NAN"
  bool polynomial = false;             // c9 == 0
  bool q_test = false;                 // slope_check at the report epsilon
  bool amplitude_zero = false;         // is_linear_flank
  bool linear = false;                 // max_dev <= exactness_tolerance

  /// The three linearity verdicts coincide (meaningful at epsilon 0).
  bool verdicts_agree() const {
    return q_test == amplitude_zero && amplitude_zero == linear;
  }
};

struct LinearityReport {
  FlankAnalysis left;
  FlankAnalysis right;
  CaseClassification classification;
  double epsilon = 0.0;
};

inline FlankAnalysis analyze_flank(const InterpolationProblem& p,
                                   FlankSide side, double epsilon) {
  FlankAnalysis a;
  a.coeffs = flank_coefficients(p, side);
  a.endpoints = chord(a.coeffs);
  const MaxDeviation m = max_deviation(a.coeffs);
  a.max_dev = m.magnitude;
  a.max_dev_argmax = m.argmax;
  a.bound_signed = error_bound_signed(a.coeffs);
  a.polynomial = a.coeffs.c9 == 0.0;
  a.q_test = slope_check(a.coeffs, epsilon);
  a.amplitude_zero = is_linear_flank(a.coeffs);
  a.linear = a.max_dev <= exactness_tolerance;
  return a;
}

inline LinearityReport analyze_linearity(const InterpolationProblem& p,
                                         double epsilon = 0.0) {
  LinearityReport r;
  r.left = analyze_flank(p, FlankSide::left, epsilon);
  r.right = analyze_flank(p, FlankSide::right, epsilon);
  r.classification = classify_case(p);
  r.epsilon = epsilon;
  return r;
}

}  // namespace kh
