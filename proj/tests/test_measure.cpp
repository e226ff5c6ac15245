#include <gtest/gtest.h>

#include "girylab.hpp"
#include "oracles.hpp"

using namespace girylab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

}  // namespace

TEST(Measure, Validation) {
  const auto s = FinSpace::discrete({"a", "b"});
  EXPECT_THROW(Measure(s, {q(1, 2), q(1, 3)}), DomainError);
  EXPECT_THROW(Measure(s, {q(3, 2), q(-1, 2)}), DomainError);
  EXPECT_THROW(Measure(s, {q(1)}), DomainError);
  EXPECT_NO_THROW(Measure(s, {q(0), q(1)}));
}

TEST(Measure, MeasureOf) {
  const auto s = FinSpace::discrete({"a", "b", "c"});
  EXPECT_EQ(measure_of(Measure::uniform(s), s.set_of({"a", "c"})), q(2, 3));
  EXPECT_EQ(measure_of(Measure(s, {q(1, 2), q(1, 3), q(1, 6)}), s.full()), 1);
  EXPECT_EQ(measure_of(unit(s, "a"), s.set_of({"a"})), 1);
  EXPECT_THROW(measure_of(Measure::uniform(FinSpace::indiscrete({"a", "b"})), 0b01), DomainError);
}

TEST(Measure, PushforwardCollapse) {
  const auto dom = FinSpace::discrete({"a", "b", "c"});
  const auto cod = FinSpace::discrete({"x", "y"});
  const MeasMap g(dom, cod, {0, 0, 1});
  const Measure pi(dom, {q(1, 2), q(1, 3), q(1, 6)});
  EXPECT_EQ(pushforward(g, pi).weights(), (std::vector<Rational>{q(5, 6), q(1, 6)}));
  EXPECT_EQ(pushforward(MeasMap::identity(dom), pi), pi);
  const auto one = FinSpace::discrete({"*"});
  EXPECT_EQ(pushforward(MeasMap::constant(dom, one, 0), pi), unit(one, 0));
}

TEST(Measure, PushforwardRejectsNonMeasurable) {
  const MeasMap g(FinSpace::indiscrete({"a", "b"}), FinSpace::discrete({"x", "y"}), {0, 1});
  EXPECT_THROW(pushforward(g, Measure::uniform(g.dom)), DomainError);
}

TEST(Measure, PushforwardMatchesPreimageSums) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = CaseRng::for_case(21, "preimage-sum", i);
    const auto dom = harness::generate_space(rng, 8);
    const auto cod = harness::generate_space(rng, 8);
    const auto g = harness::generate_map(dom, cod, rng);
    const auto pi = harness::generate_measure(dom, rng);
    const auto pushed = pushforward(g, pi);
    for (const auto set : cod.sigma()) {
      // π(g⁻¹ A) summed over domain atoms inside the preimage.
      Rational expected = 0;
      const PointSet pre = g.preimage(set);
      for (std::size_t a = 0; a < dom.atom_count(); ++a)
        if ((dom.atoms()[a] & pre) == dom.atoms()[a]) expected += pi.weight(a);
      ASSERT_EQ(measure_of(pushed, set), expected);
    }
  }
}

TEST(Integrate, Examples) {
  const auto s = FinSpace::discrete({"a", "b", "c"});
  const Measure pi(s, {q(1, 2), q(1, 3), q(1, 6)});
  EXPECT_EQ(integrate(IFunction(s, {q(1), q(1, 2), q(0)}), pi), q(2, 3));
  EXPECT_EQ(integrate(IFunction::constant(s, q(3, 7)), pi), q(3, 7));
  const PointSet a = s.set_of({"b", "c"});
  EXPECT_EQ(integrate(characteristic(s, a), pi), measure_of(pi, a));
}

TEST(Integrate, RepresentationIndependence) {
  // Two representations of one simple function: Σ c_i χ_{A_i} with
  // overlapping sets, and its atomwise disjoint normal form.
  const auto s = FinSpace::discrete({"a", "b", "c"});
  const Measure pi(s, {q(1, 4), q(1, 4), q(1, 2)});
  const Rational by_sets = q(1, 2) * measure_of(pi, s.set_of({"a", "b"})) + q(1, 4) * measure_of(pi, s.set_of({"b", "c"}));
  const IFunction f(s, {q(1, 2), q(3, 4), q(1, 4)});
  EXPECT_EQ(by_sets, integrate(f, pi));
}

TEST(Integrate, LinearAndMonotoneOnRandomCases) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = CaseRng::for_case(22, "linear", i);
    const auto s = harness::generate_space(rng, 8);
    const auto pi = harness::generate_measure(s, rng);
    const auto f = random_ifunction(s, rng);
    const auto g = random_ifunction(s, rng);
    const auto r = rng.unit();
    ASSERT_EQ(integrate(mix(r, f, g), pi), r * integrate(f, pi) + (1 - r) * integrate(g, pi));
    if (pointwise_leq(f, g)) ASSERT_LE(integrate(f, pi), integrate(g, pi));
  }
}

TEST(ChangeOfVariables, IdentityAndCollapse) {
  const auto dom = FinSpace::discrete({"a", "b", "c"});
  const auto cod = FinSpace::discrete({"x", "y"});
  const Measure pi(dom, {q(1, 2), q(1, 3), q(1, 6)});
  EXPECT_TRUE(change_of_variables_check(MeasMap::identity(dom), pi, IFunction(dom, {q(1), q(0), q(1, 2)})));
  const MeasMap g(dom, cod, {0, 0, 1});
  const IFunction f(cod, {q(1, 3), q(1)});
  EXPECT_TRUE(change_of_variables_check(g, pi, f));
  // Both sides against the weighted-sum oracle: 5/6 · 1/3 + 1/6 · 1.
  EXPECT_EQ(integrate(f, pushforward(g, pi)), q(5, 18) + q(1, 6));
}

TEST(ChangeOfVariables, RandomCases) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = CaseRng::for_case(23, "cov", i);
    const auto dom = harness::generate_space(rng, 8);
    const auto cod = harness::generate_space(rng, 8);
    const auto g = harness::generate_map(dom, cod, rng);
    const auto pi = harness::generate_measure(dom, rng);
    const auto f = random_ifunction(cod, rng);
    ASSERT_TRUE(change_of_variables_check(g, pi, f));
  }
}

TEST(IntervalMeasure, Validation) {
  EXPECT_THROW(IntervalMeasure({{q(3, 2), q(1)}}, {}), DomainError);
  EXPECT_THROW(IntervalMeasure({}, {{q(1, 2), q(1, 2), q(1)}}), DomainError);
  EXPECT_THROW(IntervalMeasure({{q(0), q(1, 2)}}, {}), DomainError);
}

TEST(IntegrateStep, Examples) {
  EXPECT_EQ(integrate_step(StepFunction::indicator_below(q(1, 4)), IntervalMeasure::lebesgue()), q(1, 4));
  const StepFunction s({q(0), q(1, 3), q(1)}, {q(1, 5), q(4, 5)}, q(0));
  EXPECT_EQ(integrate_step(s, IntervalMeasure::dirac(q(1, 2))), s(q(1, 2)));
  const IntervalMeasure mix({{q(0), q(1, 2)}}, {{q(0), q(1), q(1, 2)}});
  EXPECT_EQ(integrate_step(StepFunction::indicator_below(q(1, 2)), mix), q(3, 4));
}

TEST(IntegrateStep, AgreesWithPiecewiseOracle) {
  // Step integral over a uniform piece, computed cell by cell with explicit overlaps.
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(24, "step", i);
    const auto cells = 1 + rng.below(5);
    std::vector<Rational> breaks{0};
    for (std::uint64_t c = 1; c < cells; ++c) breaks.push_back(q(static_cast<std::int64_t>(c), static_cast<std::int64_t>(cells)));
    breaks.push_back(1);
    std::vector<Rational> vals(cells);
    for (auto& v : vals) v = rng.unit();
    const StepFunction s(breaks, vals, rng.unit());
    Rational a = rng.unit(16), b = rng.unit(16);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    Rational expected = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      const Rational lo = std::max(a, breaks[c]), hi = std::min(b, breaks[c + 1]);
      if (hi > lo) expected += (hi - lo) * vals[c];
    }
    ASSERT_EQ(integrate_step(s, IntervalMeasure({}, {{a, b, q(1)}})), expected / (b - a));
  }
}

TEST(IntegrateApprox, IdentityAgainstLebesgue) {
  const auto id = [](const Rational& x) { return x; };
  const auto mod = [](const Rational& e) { return e; };
  const Rational eps = dyadic(10);
  const auto r = integrate_approx(id, mod, eps, IntervalMeasure::lebesgue());
  EXPECT_LE(abs(r - q(1, 2)), eps);
  // Staircase oracle: ∫ x dx on a fine grid, computed with integrate_step.
  std::vector<Rational> breaks, vals;
  for (int i = 0; i <= 4096; ++i) breaks.push_back(q(i, 4096));
  for (int i = 0; i < 4096; ++i) vals.push_back(q(2 * i + 1, 8192));
  EXPECT_EQ(integrate_step(StepFunction(breaks, vals, q(1)), IntervalMeasure::lebesgue()), q(1, 2));
}

TEST(IntegrateApprox, ConstantIsExact) {
  for (const auto& r : {q(0), q(1, 3), q(1)}) {
    const auto f = [r](const Rational&) { return r; };
    const auto mod = [](const Rational&) { return Rational(1); };
    EXPECT_EQ(integrate_approx(f, mod, dyadic(4), IntervalMeasure::lebesgue()), r);
  }
}

TEST(IntegrateApprox, SquareAgainstPointMass) {
  const auto sq = [](const Rational& x) { return x * x; };
  const auto mod = [](const Rational& e) { return e / 2; };
  const Rational eps = dyadic(6);
  EXPECT_LE(abs(integrate_approx(sq, mod, eps, IntervalMeasure::dirac(q(1, 2))) - q(1, 4)), eps);
}

TEST(IntegrateApprox, SandwichAndMonotoneLadder) {
  for (const auto& f : harness::suites::quadratic_family()) {
    for (std::uint64_t i = 0; i < 4; ++i) {
      auto rng = CaseRng::for_case(25, f.name, i);
      const auto m = harness::suites::generate_interval_measure(rng);
      // Exact integral from closed-form moments.
      Rational exact = 0;
      for (const auto& p : m.points()) exact += p.mass * (f.c0 + f.c1 * p.location + f.c2 * p.location * p.location);
      for (const auto& u : m.pieces())
        exact += u.mass * (f.c0 + f.c1 * oracle::uniform_moment(u.lo, u.hi, 1) + f.c2 * oracle::uniform_moment(u.lo, u.hi, 2));
      ASSERT_EQ(exact, f.exact(m));
      const auto rungs = approx_ladder(f, f.modulus(), {dyadic(2), dyadic(4), dyadic(6), dyadic(8)}, m);
      for (std::size_t k = 0; k < rungs.size(); ++k) {
        const Rational eps = dyadic(2 + 2 * static_cast<unsigned>(k));
        ASSERT_LE(rungs[k].lower, exact);
        ASSERT_LE(exact, rungs[k].upper);
        ASSERT_LE(rungs[k].upper - rungs[k].lower, eps);
        if (k > 0) ASSERT_LE(rungs[k - 1].lower, rungs[k].lower);
        if (k > 0) ASSERT_LE(rungs[k - 1].level, rungs[k].level);
      }
    }
  }
}

TEST(IntegrateApprox, RejectsBadArguments) {
  const auto id = [](const Rational& x) { return x; };
  const auto mod = [](const Rational& e) { return e; };
  EXPECT_THROW(integrate_approx(id, mod, q(0), IntervalMeasure::lebesgue()), DomainError);
  const auto bad = [](const Rational&) { return Rational(0); };
  EXPECT_THROW(integrate_approx(id, bad, q(1, 2), IntervalMeasure::lebesgue()), DomainError);
  const auto escapes = [](const Rational& x) { return 2 * x; };
  EXPECT_THROW(integrate_approx(escapes, mod, q(1, 4), IntervalMeasure::lebesgue()), DomainError);
}
