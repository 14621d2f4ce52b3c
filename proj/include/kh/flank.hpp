#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "kh/khcore.hpp"

namespace kh {

enum class FlankSide { left, right };

constexpr std::string_view side_name(FlankSide s) {
  return s == FlankSide::left ? "left" : "right";
}

/// Closed form of one conclusion flank as a rational function of the
/// membership level:
///
///   value(alpha) = (d1*alpha^2 + d2*alpha + d3) / (c9*alpha + c10)
///
/// c1..c4 are the observation-to-antecedent flank distances expressed as
/// affine functions of alpha (c2 + c1*a and c4 + c3*a), c5..c8 the two
/// consequent flank endpoints (c6 + c5*a and c8 + c7*a), and c9/c10 the
/// distance sum. d1..d3 are the bilinear expansion of the weighted sum;
/// they are stored alongside c1..c10 and are recomputable from them.
struct FlankCoefficients {
  FlankSide side = FlankSide::left;
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
  double c6 = 0, c7 = 0, c8 = 0, c9 = 0, c10 = 0;
  double d1 = 0, d2 = 0, d3 = 0;

  /// d1..d3 re-derived from c1..c8; must match the stored values.
  std::array<double, 3> recompute_d() const {
    return {c3 * c5 + c1 * c7, c3 * c6 + c4 * c5 + c1 * c8 + c2 * c7,
            c4 * c6 + c2 * c8};
  }
};

inline FlankCoefficients flank_coefficients(const InterpolationProblem& p,
                                            FlankSide side) {
  const Trapezoid& a1 = p.rule1.antecedent;
  const Trapezoid& a2 = p.rule2.antecedent;
  const Trapezoid& b1 = p.rule1.consequent;
  const Trapezoid& b2 = p.rule2.consequent;
  const Trapezoid& ob = p.observation;

  FlankCoefficients f;
  f.side = side;
  if (side == FlankSide::left) {
    f.c1 = ob.a2 - ob.a1 - a1.a2 + a1.a1;
    f.c2 = ob.a1 - a1.a1;
    f.c3 = a2.a2 - a2.a1 - ob.a2 + ob.a1;
    f.c4 = a2.a1 - ob.a1;
    f.c5 = b1.a2 - b1.a1;
    f.c6 = b1.a1;
    f.c7 = b2.a2 - b2.a1;
    f.c8 = b2.a1;
    f.c9 = a1.a1 - a1.a2 + a2.a2 - a2.a1;
    f.c10 = a2.a1 - a1.a1;
  } else {
    // Mirror of the left system: indices 1<->4 and 2<->3, tangents in the
    // negative direction.
    f.c1 = ob.a3 - ob.a4 - a1.a3 + a1.a4;
    f.c2 = ob.a4 - a1.a4;
    f.c3 = a2.a3 - a2.a4 - ob.a3 + ob.a4;
    f.c4 = a2.a4 - ob.a4;
    f.c5 = b1.a3 - b1.a4;
    f.c6 = b1.a4;
    f.c7 = b2.a3 - b2.a4;
    f.c8 = b2.a4;
    f.c9 = a1.a4 - a1.a3 + a2.a3 - a2.a4;
    f.c10 = a2.a4 - a1.a4;
  }
  const auto d = f.recompute_d();
  f.d1 = d[0];
  f.d2 = d[1];
  f.d3 = d[2];
  return f;
}

/// Numerator of the hyperbolic amplitude, d3*c9^2 - d2*c9*c10 + d1*c10^2.
/// It vanishes exactly when the rational flank degenerates to an affine
/// function, and it is the numerator of the error bound.
inline double amplitude_numerator(const FlankCoefficients& f) {
  return f.d3 * f.c9 * f.c9 - f.d2 * f.c9 * f.c10 + f.d1 * f.c10 * f.c10;
}

inline double flank_value(const FlankCoefficients& f, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw OutOfRange("alpha level " + std::to_string(alpha) +
                     " outside [0, 1]");
  }
  const double den = f.c9 * alpha + f.c10;
  if (den == 0.0) {
    throw DegenerateRules(alpha, "flank denominator vanishes at alpha=" +
                                     std::to_string(alpha));
  }
  return ((f.d1 * alpha + f.d2) * alpha + f.d3) / den;
}

/// Split of a flank with c9 != 0 into a hyperbola plus a straight line:
///
///   value(alpha) = amplitude / (alpha + shift) + slope*alpha + offset
struct HyperbolaDecomposition {
  double amplitude = 0.0;
  double shift = 0.0;
  double slope = 0.0;
  double offset = 0.0;

  double value(double alpha) const {
    return amplitude / (alpha + shift) + slope * alpha + offset;
  }
};

inline HyperbolaDecomposition hyperbola_decompose(const FlankCoefficients& f) {
  if (f.c9 == 0.0) {
    throw PolynomialFlank("flank is polynomial (constant denominator); no hyperbola to extract");
  }
  HyperbolaDecomposition h;
  h.amplitude = amplitude_numerator(f) / (f.c9 * f.c9 * f.c9);
  h.shift = f.c10 / f.c9;
  h.slope = f.d1 / f.c9;
  h.offset = (f.d2 * f.c9 - f.d1 * f.c10) / (f.c9 * f.c9);
  return h;
}

}  // namespace kh
