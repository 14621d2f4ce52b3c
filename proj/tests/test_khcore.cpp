#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "kh/khcore.hpp"
#include "support/generators.hpp"

using Catch::Matchers::WithinAbs;

namespace {

kh::InterpolationProblem y1s1() {
  return kh::make_problem(kh::make_trapezoid(0, 2, 2, 8),    // A1
                          kh::make_trapezoid(0, 2, 2, 4),    // B1
                          kh::make_trapezoid(14, 20, 20, 22),  // A2
                          kh::make_trapezoid(9, 11, 11, 13),   // B2
                          kh::make_trapezoid(9, 11, 11, 13));  // A*
}

}  // namespace

TEST_CASE("make_problem enforces the orderings") {
  CHECK_NOTHROW(y1s1());
  // observation to the left of the first antecedent
  CHECK_THROWS_AS(
      kh::make_problem(kh::make_trapezoid(10, 12, 12, 14),
                       kh::make_trapezoid(0, 2, 2, 4),
                       kh::make_trapezoid(20, 22, 22, 24),
                       kh::make_trapezoid(9, 11, 11, 13),
                       kh::make_trapezoid(0, 1, 1, 2)),
      kh::OrderingViolation);
  // consequents swapped
  CHECK_THROWS_AS(
      kh::make_problem(kh::make_trapezoid(0, 2, 2, 4),
                       kh::make_trapezoid(9, 11, 11, 13),
                       kh::make_trapezoid(20, 22, 22, 24),
                       kh::make_trapezoid(0, 2, 2, 4),
                       kh::make_trapezoid(10, 12, 12, 14)),
      kh::OrderingViolation);
}

TEST_CASE("conclusion_cut reproduces the nonlinear reference flanks") {
  const auto p = y1s1();

  const kh::Interval support = kh::conclusion_cut(p, 0.0);
  CHECK_THAT(support.lo, WithinAbs(81.0 / 14.0, 1e-12));
  CHECK_THAT(support.hi, WithinAbs(101.0 / 14.0, 1e-12));

  const kh::Interval core = kh::conclusion_cut(p, 1.0);
  CHECK_THAT(core.lo, WithinAbs(6.5, 1e-12));
  CHECK_THAT(core.hi, WithinAbs(6.5, 1e-12));

  const kh::Interval mid = kh::conclusion_cut(p, 0.5);
  CHECK_THAT(mid.lo, WithinAbs(6.0625, 1e-12));
  CHECK_THAT(mid.hi, WithinAbs(6.9375, 1e-12));
}

TEST_CASE("interpolate assembles the characteristic points") {
  // identical rules and observation between them: conclusion = observation
  const auto x2 = kh::make_problem(kh::make_trapezoid(0, 3, 3, 4),
                                   kh::make_trapezoid(0, 3, 3, 4),
                                   kh::make_trapezoid(10, 11, 11, 14),
                                   kh::make_trapezoid(10, 11, 11, 14),
                                   kh::make_trapezoid(5, 6, 6, 7));
  const kh::Conclusion c = kh::interpolate(x2, kh::AlphaGrid::standard());
  CHECK_THAT(c.characteristic[0], WithinAbs(5.0, 1e-12));
  CHECK_THAT(c.characteristic[1], WithinAbs(6.0, 1e-12));
  CHECK_THAT(c.characteristic[2], WithinAbs(6.0, 1e-12));
  CHECK_THAT(c.characteristic[3], WithinAbs(7.0, 1e-12));
  CHECK(c.all_valid());
  CHECK(c.nested());

  const auto y3 = kh::make_problem(kh::make_trapezoid(0, 3, 3, 7),
                                   kh::make_trapezoid(0, 2, 2, 5),
                                   kh::make_trapezoid(15, 18, 18, 22),
                                   kh::make_trapezoid(8, 9, 9, 10),
                                   kh::make_trapezoid(7, 8, 8, 10));
  const kh::Conclusion cy = kh::interpolate(y3, kh::AlphaGrid::standard());
  CHECK_THAT(cy.characteristic[0], WithinAbs(3.7333, 5e-5));
  CHECK_THAT(cy.characteristic[1], WithinAbs(4.3333, 5e-5));
  CHECK_THAT(cy.characteristic[2], WithinAbs(4.3333, 5e-5));
  CHECK_THAT(cy.characteristic[3], WithinAbs(6.0000, 5e-5));
}

TEST_CASE("rules that mirror the antecedents return the observation") {
  std::mt19937 rng(7101);
  for (int i = 0; i < 100; ++i) {
    const kh::Trapezoid a1 = khtest::trapezoid_in(rng, 0, 10);
    const kh::Trapezoid a2 = khtest::trapezoid_in(rng, 24, 34);
    const kh::Trapezoid obs = khtest::trapezoid_in(rng, 12, 22);
    const auto p = kh::make_problem(a1, a1, a2, a2, obs);
    for (double alpha : kh::AlphaGrid::standard().levels()) {
      const kh::Interval got = kh::conclusion_cut(p, alpha);
      const kh::Interval want = kh::alpha_cut(obs, alpha);
      REQUIRE_THAT(got.lo, WithinAbs(want.lo, 1e-12));
      REQUIRE_THAT(got.hi, WithinAbs(want.hi, 1e-12));
    }
  }
}

TEST_CASE("an observation equal to a rule antecedent yields that consequent") {
  // built without make_problem: the strict ordering is deliberately relaxed
  const kh::Trapezoid a1 = kh::make_trapezoid(2, 4, 4, 6);
  const kh::Trapezoid b1 = kh::make_trapezoid(1, 2, 2, 3);
  const kh::Trapezoid a2 = kh::make_trapezoid(10, 12, 12, 14);
  const kh::Trapezoid b2 = kh::make_trapezoid(8, 9, 9, 11);
  const kh::InterpolationProblem p{{a1, b1}, {a2, b2}, a1};
  for (double alpha : kh::AlphaGrid::standard().levels()) {
    const kh::Interval got = kh::conclusion_cut(p, alpha);
    const kh::Interval want = kh::alpha_cut(b1, alpha);
    REQUIRE_THAT(got.lo, WithinAbs(want.lo, 1e-12));
    REQUIRE_THAT(got.hi, WithinAbs(want.hi, 1e-12));
  }
}

TEST_CASE("coincident antecedent flanks raise DegenerateRules") {
  const kh::Trapezoid a = kh::make_trapezoid(0, 1, 1, 2);
  const kh::InterpolationProblem p{{a, a}, {a, a}, a};
  try {
    kh::conclusion_cut(p, 0.5);
    FAIL("expected DegenerateRules");
  } catch (const kh::DegenerateRules& e) {
    CHECK(e.alpha() == 0.5);
  }
}

TEST_CASE("conclusion endpoints stay between the consequent endpoints") {
  std::mt19937 rng(7102);
  for (int i = 0; i < 300; ++i) {
    const auto p = khtest::random_problem(rng);
    for (double alpha : kh::AlphaGrid::standard().levels()) {
      const kh::Interval b1 = kh::alpha_cut(p.rule1.consequent, alpha);
      const kh::Interval b2 = kh::alpha_cut(p.rule2.consequent, alpha);
      const kh::Interval got = kh::conclusion_cut(p, alpha);
      REQUIRE(got.lo >= b1.lo - 1e-9);
      REQUIRE(got.lo <= b2.lo + 1e-9);
      REQUIRE(got.hi >= b1.hi - 1e-9);
      REQUIRE(got.hi <= b2.hi + 1e-9);
    }
  }
}

TEST_CASE("abnormal cuts are kept and flagged, never repaired") {
  // Antecedents with wide cores and a triangular observation: the lower
  // weights favour rule 2 while the upper weights favour rule 1, which
  // drives the core endpoints past each other.
  const auto p = kh::make_problem(kh::make_trapezoid(0, 1, 3, 4),
                                  kh::make_trapezoid(0, 1, 1, 2),
                                  kh::make_trapezoid(10, 11, 13, 14),
                                  kh::make_trapezoid(10, 11, 11, 12),
                                  kh::make_trapezoid(6, 7, 7, 8));
  const kh::Conclusion c = kh::interpolate(p, kh::AlphaGrid::standard());
  CHECK_FALSE(c.all_valid());
  CHECK(c.abnormal_count() > 0);
  // the core cut is inverted: lo(1) = 7 from below, hi(1) = 5 from above
  CHECK_THAT(c.characteristic[1], WithinAbs(7.0, 1e-12));
  CHECK_THAT(c.characteristic[2], WithinAbs(5.0, 1e-12));
  CHECK(c.cuts.front().valid());  // the support itself is fine
}

TEST_CASE("alpha grid construction and validation") {
  const kh::AlphaGrid std_grid = kh::AlphaGrid::standard();
  CHECK(std_grid.size() == 11);
  CHECK(std_grid.levels().front() == 0.0);
  CHECK(std_grid.levels().back() == 1.0);

  const kh::AlphaGrid quarters = kh::AlphaGrid::with_step(0.25);
  CHECK(quarters.size() == 5);
  CHECK(quarters.levels()[2] == 0.5);

  CHECK_THROWS_AS(kh::AlphaGrid({0.2, 0.4, 1.0}), kh::InvalidGrid);
  CHECK_THROWS_AS(kh::AlphaGrid({0.0, 0.4, 0.9}), kh::InvalidGrid);
  CHECK_THROWS_AS(kh::AlphaGrid({0.0, 0.5, 0.5, 1.0}), kh::InvalidGrid);
  CHECK_THROWS_AS(kh::AlphaGrid::with_step(0.0), kh::OutOfRange);
}
