#include <gtest/gtest.h>

#include "girylab.hpp"

using namespace girylab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

}  // namespace

TEST(LimitFunctional, Examples) {
  EXPECT_EQ(limit_functional(EventualFn::constant(q(2, 7))), q(2, 7));
  for (std::size_t n = 0; n < 50; ++n) {
    const auto f = EventualFn::indicator_from(n);
    EXPECT_EQ(limit_functional(f), 1);
    // f_n vanishes at every point below n.
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(f(k), 0);
  }
  EXPECT_EQ(limit_functional(characteristic(FinCofSet::finite({1, 4, 9}))), 0);
}

TEST(EventualFn, Validation) {
  EXPECT_THROW(EventualFn({q(2)}, q(0)), DomainError);
  EXPECT_THROW(EventualFn({}, q(-1)), DomainError);
}

TEST(CofiniteMeasure, Examples) {
  EXPECT_EQ(cofinite_measure(FinCofSet::finite({0, 1, 2})), 0);
  EXPECT_EQ(cofinite_measure(FinCofSet::cofinite({5})), 1);
  const auto a = FinCofSet::finite({1, 2});
  const auto b = FinCofSet::cofinite({0, 1, 2});
  ASSERT_TRUE(disjoint(a, b));
  const auto u = set_union(a, b);
  EXPECT_FALSE(u.is_finite());
  EXPECT_EQ(u.elements(), (std::set<std::size_t>{0}));
  EXPECT_EQ(cofinite_measure(u), cofinite_measure(a) + cofinite_measure(b));
}

TEST(CofiniteMeasure, AdditiveOnRandomDisjointPairs) {
  // Case analysis: finite ∪ finite is finite (0 + 0), finite ∪ cofinite is
  // cofinite (0 + 1); two cofinite sets are never disjoint.
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = CaseRng::for_case(61, "additive", i);
    const auto a = random_fincof(rng), b = random_fincof(rng);
    bool truly_disjoint = true;
    for (std::size_t n = 0; n < 64; ++n) truly_disjoint = truly_disjoint && !(a.contains(n) && b.contains(n));
    if (!a.is_finite() && !b.is_finite()) truly_disjoint = false;
    ASSERT_EQ(disjoint(a, b), truly_disjoint);
    if (!truly_disjoint) continue;
    ++checked;
    const auto u = set_union(a, b);
    for (std::size_t n = 0; n < 64; ++n) ASSERT_EQ(u.contains(n), a.contains(n) || b.contains(n));
    const Rational expected = (a.is_finite() && b.is_finite()) ? q(0) : q(1);
    ASSERT_EQ(cofinite_measure(u), expected);
    ASSERT_EQ(cofinite_measure(u), cofinite_measure(a) + cofinite_measure(b));
  }
  EXPECT_GT(checked, 100u);
}

TEST(CofiniteMeasure, MatchesLimitOfIndicator) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = CaseRng::for_case(62, "lambda", i);
    const auto a = random_fincof(rng);
    ASSERT_EQ(cofinite_measure(a), limit_functional(characteristic(a)));
    for (std::size_t n = 0; n < 20; ++n) ASSERT_EQ(characteristic(a)(n), a.contains(n) ? 1 : 0);
  }
}

TEST(LimitFunctional, AffineAndWeaklyAveraging) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = CaseRng::for_case(63, "affine", i);
    const auto f = random_eventual_fn(rng), g = random_eventual_fn(rng);
    const auto r = rng.unit();
    ASSERT_EQ(limit_functional(mix(r, f, g)), r * limit_functional(f) + (1 - r) * limit_functional(g));
    ASSERT_EQ(limit_functional(EventualFn::constant(r)), r);
  }
}

TEST(SupContinuity, Examples) {
  auto rng = CaseRng(3);
  const auto f = random_eventual_fn(rng);
  const auto same = sup_continuity_check(f, f);
  EXPECT_TRUE(same.passed);
  EXPECT_EQ(same.witness.at("epsilon"), "0/1");
  const EventualFn a({q(1, 3), q(0)}, q(1, 2)), b({q(1, 3), q(0)}, q(1, 4));
  const auto v = sup_continuity_check(a, b);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.witness.at("gap"), "1/4");
  EXPECT_EQ(v.witness.at("epsilon"), "1/4");
}

TEST(SupContinuity, RandomPairs) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = CaseRng::for_case(64, "sup", i);
    const auto f = random_eventual_fn(rng), g = random_eventual_fn(rng);
    // Oracle for the sup distance: brute force over a window past both prefixes.
    Rational eps = 0;
    for (std::size_t n = 0; n < 20; ++n) eps = std::max(eps, abs(f(n) - g(n)));
    ASSERT_EQ(sup_distance(f, g), eps);
    ASSERT_TRUE(sup_continuity_check(f, g).passed);
  }
}

TEST(RespectsLimits, LimitFunctionalIsStuckAtOne) {
  const auto v = respects_limits(limit_functional, shrinking_tails(), 128);
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(v.witness.at("stuck_at"), "1/1");
  const auto& values = v.witness.at("values");
  EXPECT_EQ(values.size(), 129u);
  for (const auto& x : values) EXPECT_EQ(x, "1/1");
}

TEST(RespectsLimits, EvaluationAtAPointPasses) {
  const auto at_three = [](const EventualFn& f) { return f(3); };
  EXPECT_TRUE(respects_limits(at_three, shrinking_tails()).passed);
}

TEST(RespectsLimits, RejectsUncertifiedWitness) {
  const NatLimitWitness bogus{[](std::size_t) { return EventualFn::constant(1); }, [](std::size_t) { return std::size_t{0}; },
                              "constant one"};
  EXPECT_THROW(respects_limits(limit_functional, bogus), DomainError);
}

TEST(CountableAdditivity, Violation) {
  const auto report = countable_additivity_violation();
  EXPECT_EQ(report.partial_sum_terms, 1'000'000u);
  EXPECT_EQ(report.singleton_partial_sum, 0);
  EXPECT_EQ(report.total_mass, 1);
  EXPECT_FALSE(report.limits.passed);
  EXPECT_EQ(report.to_json().at("respects_limits").at("witness").at("stuck_at"), "1/1");
}

TEST(CounterexampleSuite, Passes) {
  const auto report = harness::run_suite("counterexample", harness::SuiteConfig{});
  EXPECT_TRUE(report.passed());
  const auto j = report.to_json();
  bool refutation = false;
  for (const auto& p : j.at("properties"))
    if (p.at("name") == "limit-functional-fails-respects-limits")
      refutation = p.at("witness").at("example").at("witness").at("stuck_at") == "1/1";
  EXPECT_TRUE(refutation) << j.dump();
}
