#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "kh/flank.hpp"
#include "support/generators.hpp"

using Catch::Matchers::WithinAbs;

namespace {

kh::InterpolationProblem y1s1() {
  return kh::make_problem(kh::make_trapezoid(0, 2, 2, 8),
                          kh::make_trapezoid(0, 2, 2, 4),
                          kh::make_trapezoid(14, 20, 20, 22),
                          kh::make_trapezoid(9, 11, 11, 13),
                          kh::make_trapezoid(9, 11, 11, 13));
}

kh::InterpolationProblem x1() {
  return kh::make_problem(kh::make_trapezoid(0, 2, 2, 6),
                          kh::make_trapezoid(0, 2, 2, 6),
                          kh::make_trapezoid(10, 12, 12, 16),
                          kh::make_trapezoid(10, 12, 12, 16),
                          kh::make_trapezoid(7, 8, 8, 9));
}

kh::InterpolationProblem x2() {
  return kh::make_problem(kh::make_trapezoid(0, 3, 3, 4),
                          kh::make_trapezoid(0, 3, 3, 4),
                          kh::make_trapezoid(10, 11, 11, 14),
                          kh::make_trapezoid(10, 11, 11, 14),
                          kh::make_trapezoid(5, 6, 6, 7));
}

kh::Trapezoid mirrored(const kh::Trapezoid& t) {
  return kh::make_trapezoid(-t.a4, -t.a3, -t.a2, -t.a1);
}

// Reflection of the whole problem through x -> -x; rule order flips.
kh::InterpolationProblem mirrored(const kh::InterpolationProblem& p) {
  return kh::make_problem(mirrored(p.rule2.antecedent),
                          mirrored(p.rule2.consequent),
                          mirrored(p.rule1.antecedent),
                          mirrored(p.rule1.consequent),
                          mirrored(p.observation));
}

}  // namespace

TEST_CASE("left coefficient system of the nonlinear reference case") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(y1s1(), kh::FlankSide::left);
  CHECK(f.c9 == 4.0);
  CHECK(f.c10 == 14.0);
  CHECK(f.d1 == 8.0);
  CHECK(f.d2 == 28.0);
  CHECK(f.d3 == 81.0);
}

TEST_CASE("right coefficient system of the nonlinear reference case") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(y1s1(), kh::FlankSide::right);
  CHECK(f.c9 == 4.0);
  CHECK(f.c10 == 14.0);
  CHECK(f.d1 == -8.0);
  CHECK(f.d2 == 24.0);
  CHECK(f.d3 == 101.0);
}

TEST_CASE("coefficient spot checks for the linear group") {
  const kh::FlankCoefficients fx2 =
      kh::flank_coefficients(x2(), kh::FlankSide::left);
  CHECK(fx2.c9 == -2.0);
  CHECK(fx2.d1 == -2.0);

  const kh::FlankCoefficients fx1 =
      kh::flank_coefficients(x1(), kh::FlankSide::left);
  CHECK(fx1.c9 == 0.0);
  CHECK(fx1.d1 == 0.0);
}

TEST_CASE("stored d values match their bilinear recomputation") {
  std::mt19937 rng(7201);
  for (int i = 0; i < 200; ++i) {
    const auto p = khtest::random_problem(rng);
    for (kh::FlankSide side : {kh::FlankSide::left, kh::FlankSide::right}) {
      const kh::FlankCoefficients f = kh::flank_coefficients(p, side);
      const auto d = f.recompute_d();
      REQUIRE_THAT(f.d1, WithinAbs(d[0], 1e-12));
      REQUIRE_THAT(f.d2, WithinAbs(d[1], 1e-12));
      REQUIRE_THAT(f.d3, WithinAbs(d[2], 1e-12));
      REQUIRE(f.c10 > 0.0);
      REQUIRE(f.c9 + f.c10 > 0.0);
    }
  }
}

TEST_CASE("flank_value evaluates the rational form") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(y1s1(), kh::FlankSide::left);
  CHECK_THAT(kh::flank_value(f, 0.0), WithinAbs(81.0 / 14.0, 1e-12));
  CHECK_THAT(kh::flank_value(f, 1.0), WithinAbs(6.5, 1e-12));

  const auto y4 = kh::make_problem(kh::make_trapezoid(1, 2, 2, 4),
                                   kh::make_trapezoid(0, 2, 2, 5),
                                   kh::make_trapezoid(10, 12, 12, 15),
                                   kh::make_trapezoid(12, 13, 13, 14),
                                   kh::make_trapezoid(6, 7, 7, 8));
  const kh::FlankCoefficients fy4 =
      kh::flank_coefficients(y4, kh::FlankSide::left);
  CHECK(fy4.d1 == 2.0);
  CHECK(fy4.d2 == 13.0);
  CHECK(fy4.d3 == 60.0);
  CHECK(fy4.c9 == 1.0);
  CHECK(fy4.c10 == 9.0);
  CHECK_THAT(kh::flank_value(fy4, 0.5), WithinAbs(67.0 / 9.5, 1e-12));
}

TEST_CASE("flank_value rejects bad input") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(y1s1(), kh::FlankSide::left);
  CHECK_THROWS_AS(kh::flank_value(f, 1.5), kh::OutOfRange);

  kh::FlankCoefficients broken = f;
  broken.c9 = 1.0;
  broken.c10 = -0.5;  // denominator vanishes at alpha = 0.5
  CHECK_THROWS_AS(kh::flank_value(broken, 0.5), kh::DegenerateRules);
}

TEST_CASE("closed form agrees with the cut engine everywhere") {
  std::mt19937 rng(7202);
  for (int i = 0; i < 1000; ++i) {
    const auto p = khtest::random_problem(rng);
    const kh::FlankCoefficients fl =
        kh::flank_coefficients(p, kh::FlankSide::left);
    const kh::FlankCoefficients fr =
        kh::flank_coefficients(p, kh::FlankSide::right);
    for (double alpha : kh::AlphaGrid::standard().levels()) {
      const kh::Interval cut = kh::conclusion_cut(p, alpha);
      REQUIRE_THAT(kh::flank_value(fl, alpha), WithinAbs(cut.lo, 1e-9));
      REQUIRE_THAT(kh::flank_value(fr, alpha), WithinAbs(cut.hi, 1e-9));
    }
  }
}

TEST_CASE("hyperbola decomposition of the nonlinear reference case") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(y1s1(), kh::FlankSide::left);
  const kh::HyperbolaDecomposition h = kh::hyperbola_decompose(f);
  CHECK_THAT(h.amplitude, WithinAbs(20.25, 1e-12));
  CHECK_THAT(h.shift, WithinAbs(3.5, 1e-12));
  CHECK_THAT(h.slope, WithinAbs(2.0, 1e-12));
  CHECK_THAT(h.offset, WithinAbs(0.0, 1e-12));
}

TEST_CASE("hyperbola amplitude vanishes for identical rule pairs") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(x2(), kh::FlankSide::left);
  CHECK_THAT(kh::hyperbola_decompose(f).amplitude, WithinAbs(0.0, 1e-12));
}

TEST_CASE("polynomial flanks have no hyperbola") {
  const kh::FlankCoefficients f =
      kh::flank_coefficients(x1(), kh::FlankSide::left);
  CHECK_THROWS_AS(kh::hyperbola_decompose(f), kh::PolynomialFlank);
}

TEST_CASE("decomposition reconstructs the rational flank") {
  std::mt19937 rng(7203);
  int decomposed = 0;
  for (int i = 0; i < 300; ++i) {
    const auto p = khtest::random_problem(rng);
    for (kh::FlankSide side : {kh::FlankSide::left, kh::FlankSide::right}) {
      const kh::FlankCoefficients f = kh::flank_coefficients(p, side);
      if (f.c9 == 0.0) continue;
      ++decomposed;
      const kh::HyperbolaDecomposition h = kh::hyperbola_decompose(f);
      for (double alpha : kh::AlphaGrid::standard().levels()) {
        REQUIRE_THAT(h.value(alpha),
                     WithinAbs(kh::flank_value(f, alpha), 1e-9));
      }
    }
  }
  CHECK(decomposed > 100);
}

TEST_CASE("endpoint identities hold to machine precision") {
  std::mt19937 rng(7204);
  for (int i = 0; i < 300; ++i) {
    const auto p = khtest::random_problem(rng);
    for (kh::FlankSide side : {kh::FlankSide::left, kh::FlankSide::right}) {
      const kh::FlankCoefficients f = kh::flank_coefficients(p, side);
      REQUIRE_THAT(kh::flank_value(f, 0.0), WithinAbs(f.d3 / f.c10, 1e-12));
      REQUIRE_THAT(kh::flank_value(f, 1.0),
                   WithinAbs((f.d1 + f.d2 + f.d3) / (f.c9 + f.c10), 1e-12));
    }
  }
}

TEST_CASE("mirror symmetry maps right coefficients onto left ones") {
  std::mt19937 rng(7205);
  for (int i = 0; i < 200; ++i) {
    const auto p = khtest::random_problem(rng);
    const auto q = mirrored(p);
    const kh::FlankCoefficients l =
        kh::flank_coefficients(p, kh::FlankSide::left);
    const kh::FlankCoefficients r =
        kh::flank_coefficients(q, kh::FlankSide::right);
    // the reflection swaps the two rules and negates the consequent scale
    REQUIRE(r.c1 == l.c3);
    REQUIRE(r.c2 == l.c4);
    REQUIRE(r.c3 == l.c1);
    REQUIRE(r.c4 == l.c2);
    REQUIRE(r.c5 == -l.c7);
    REQUIRE(r.c6 == -l.c8);
    REQUIRE(r.c7 == -l.c5);
    REQUIRE(r.c8 == -l.c6);
    REQUIRE(r.c9 == l.c9);
    REQUIRE(r.c10 == l.c10);
    REQUIRE(r.d1 == -l.d1);
    REQUIRE(r.d2 == -l.d2);
    REQUIRE(r.d3 == -l.d3);
    for (double alpha : kh::AlphaGrid::standard().levels()) {
      REQUIRE_THAT(kh::flank_value(r, alpha),
                   WithinAbs(-kh::flank_value(l, alpha), 1e-9));
    }
  }
}
