#include <gtest/gtest.h>

#include "girylab.hpp"
#include "oracles.hpp"

using namespace girylab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

using Points = std::vector<std::vector<Rational>>;

Points triangle() { return {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}; }

}  // namespace

TEST(AffineMap, Examples) {
  EXPECT_EQ(apply_affine(AffineMapFin::convex_pair(q(1, 2)), std::vector<Rational>{q(1), q(0)}), q(1, 2));
  EXPECT_EQ(apply_affine(AffineMapFin::constant(3, q(2, 5)), std::vector<Rational>{q(1), q(0), q(1, 3)}), q(2, 5));
  const AffineMapD0 h(q(1, 2), {q(1, 4), q(-1, 4)});
  EXPECT_EQ(apply_affine(h, D0Element({q(1), q(1)})), q(1, 2));
  EXPECT_EQ(AffineMapFin::projection(3, 1), AffineMapFin(q(0), {q(0), q(1), q(0)}));
  EXPECT_EQ(AffineMapFin::constant(0, q(1, 3)).a0, q(1, 3));
}

TEST(AffineMap, RejectsMapsLeavingI) {
  EXPECT_THROW(AffineMapFin(q(0), {q(1), q(1)}), DomainError);
  EXPECT_THROW(AffineMapFin(q(1, 2), {q(-1)}), DomainError);
  EXPECT_THROW(AffineMapD0(q(0), {q(1, 2), q(-1, 4)}), DomainError);
  EXPECT_THROW(apply_affine(AffineMapFin::projection(2, 0), std::vector<Rational>{q(1)}), DomainError);
  EXPECT_THROW(apply_affine(AffineMapFin::projection(1, 0), std::vector<Rational>{q(2)}), DomainError);
  EXPECT_THROW(D0Element({q(3, 2)}), DomainError);
}

TEST(AffineMap, SamplesStayInsideIOnEveryCorner) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = CaseRng::for_case(51, "sample", i);
    const auto n = static_cast<std::size_t>(rng.between(0, 4));
    const auto h = sample_affine(n, rng);
    ASSERT_EQ(h.arity(), n);
    // Extreme values of an affine map on the cube are attained at corners.
    Rational lo = h.a0, hi = h.a0;
    for (const auto& c : h.a) (c < 0 ? lo : hi) += c;
    ASSERT_GE(lo, 0);
    ASSERT_LE(hi, 1);
  }
}

TEST(AffineMap, CompositionIsCoefficientwise) {
  const AffineMapFin outer(q(1, 4), {q(1, 2), q(-1, 4)});
  const std::vector<AffineMapFin> inner{AffineMapFin::projection(2, 0), AffineMapFin(q(1, 2), {q(1, 4), q(1, 4)})};
  const auto c = compose(outer, inner);
  EXPECT_EQ(c.a0, q(1, 4) - q(1, 8));
  EXPECT_EQ(c.a, (std::vector<Rational>{q(1, 2) - q(1, 16), q(-1, 16)}));
  EXPECT_EQ(compose(AffineMapFin::constant(0, q(1, 3)), {}, 4).arity(), 4u);
}

TEST(Naturality, MaxFunctionalOnTwoPointsHasResidualOneHalf) {
  const auto s = FinSpace::discrete({"a", "b"});
  const auto v = check_naturality(lift(max_functional(s)), AffineMapFin::convex_pair(q(1, 2)),
                                  {atom_indicator(s, 0), atom_indicator(s, 1)});
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(v.witness.at("path_one"), "1/1");
  EXPECT_EQ(v.witness.at("path_two"), "1/2");
  EXPECT_EQ(abs(parse_rational(v.witness.at("residual").get<std::string>())), q(1, 2));
  EXPECT_EQ(v.witness.at("h").at("a"), Json::array({"1/2", "1/2"}));
  EXPECT_EQ(v.witness.at("f").size(), 2u);
}

TEST(Naturality, ProjectionsAlwaysCommute) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(52, "projection", i);
    const auto s = harness::generate_space(rng, 6, 2);
    const auto phi = harness::generate_adversarial(s, rng);
    const auto k = static_cast<std::size_t>(rng.between(1, 4));
    const auto f = harness::generate_tuple(s, k, rng);
    ASSERT_TRUE(check_naturality(lift(phi), AffineMapFin::projection(k, rng.below(k)), f).passed);
  }
}

TEST(Naturality, ExtensionalPassesEverySampledSquare) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = CaseRng::for_case(53, "sound", i);
    const auto s = harness::generate_space(rng, 8);
    const auto alpha = lift(harness::generate_extensional(s, rng));
    const auto k = static_cast<std::size_t>(rng.between(0, 4));
    const auto v = check_naturality(alpha, sample_affine(k, rng), harness::generate_tuple(s, k, rng));
    ASSERT_TRUE(v.passed) << to_json(v).dump();
    const auto d0 = check_naturality(alpha, sample_affine_d0(k, rng), harness::generate_d0_map(s, rng));
    ASSERT_TRUE(d0.passed) << to_json(d0).dump();
  }
}

TEST(Naturality, SquareFunctionalRefutedByConstant) {
  const auto s = FinSpace::discrete(2);
  const auto v = check_naturality(lift(square_functional(s, 0)), AffineMapFin::constant(0, q(1, 2)), {});
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(v.witness.at("path_one"), "1/2");
  EXPECT_EQ(v.witness.at("path_two"), "1/4");
}

TEST(Naturality, StreamRefutesMaxAndPassesExtensional) {
  const auto s = FinSpace::discrete(3);
  const auto bad = harness::naturality_stream(max_functional(s), 60, 1, 4);
  EXPECT_TRUE(std::any_of(bad.begin(), bad.end(), [](const Verdict& v) { return !v.passed; }));
  const auto good = harness::naturality_stream(Functional::extensional(s, {q(1, 2), q(1, 3), q(1, 6)}), 200, 1, 4);
  EXPECT_TRUE(std::all_of(good.begin(), good.end(), [](const Verdict& v) { return v.passed; }));
  EXPECT_EQ(good.size(), 200u);
}

TEST(RespectsD0, Examples) {
  const auto s = FinSpace::discrete(3);
  const auto phi = Functional::extensional(s, {q(1, 2), q(1, 4), q(1, 4)});
  const auto chi = characteristic(s, s.set_of({"0", "1"}));
  const auto zero = IFunction::constant(s, 0);
  const auto v = respects_d0(lift(phi), D0Map(s, {chi, zero, zero}));
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.witness.at("entries"), Json::array({"3/4", "0/1", "0/1"}));
  EXPECT_EQ(v.witness.at("zero_from"), 1);
  const auto empty = respects_d0(lift(phi), D0Map(s, {}));
  EXPECT_TRUE(empty.passed);
  EXPECT_TRUE(empty.witness.at("entries").empty());
  // A functional with φ(0̄) ≠ 0 sends the zero tail outside d0.
  const auto off = Functional::intensional(s, [](const IFunction& f) { return (1 + f.at_atom(0)) / 2; }, "offset");
  EXPECT_FALSE(respects_d0(lift(off), D0Map(s, {chi})).passed);
}

TEST(D0Map, CertificateIsChecked) {
  const auto s = FinSpace::discrete(2);
  const auto one = IFunction::constant(s, 1);
  EXPECT_THROW(D0Map(s, {one, one}, 1), DomainError);
  EXPECT_EQ(D0Map(s, {one, IFunction::constant(s, 0)}).zero_from(), 1u);
  EXPECT_EQ(D0Map(s, {one}, 5).zero_from(), 5u);
}

TEST(ReconstructPhi, RoundTripsLift) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(54, "round-trip", i);
    const auto phi = harness::generate_extensional(harness::generate_space(rng, 8), rng);
    const auto rec = reconstruct_phi(forget_to_d0(lift(phi)), 8, i);
    ASSERT_TRUE(rec.ok());
    ASSERT_EQ(rec.phi->coefficients(), phi.coefficients());
  }
}

TEST(ReconstructPhi, EntrywiseMaxFailsConvexPair) {
  const auto s = FinSpace::discrete(3);
  const auto rec = reconstruct_phi(entrywise_max_action(s));
  EXPECT_FALSE(rec.ok());
  const auto it = std::find_if(rec.squares.begin(), rec.squares.end(), [](const Verdict& v) { return v.property == "square:convex-pair"; });
  ASSERT_NE(it, rec.squares.end());
  EXPECT_FALSE(it->passed);
  EXPECT_NE(it->witness.at("path_one"), it->witness.at("path_two"));
}

TEST(ReconstructPhi, EntrywiseEvaluationIsDirac) {
  const auto s = FinSpace::generate({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a"}});
  const auto rec = reconstruct_phi(entrywise_eval_action(s, 2));
  ASSERT_TRUE(rec.ok());
  EXPECT_EQ(rec.phi->coefficients(), eta_S(s, 2).coefficients());
}

TEST(Hull, Examples) {
  EXPECT_TRUE(hull_membership(triangle(), {q(1, 3), q(1, 3)}));
  EXPECT_FALSE(hull_membership(triangle(), {q(1), q(1)}));
  EXPECT_TRUE(hull_membership({{q(2), q(-1)}}, {q(2), q(-1)}));
  EXPECT_FALSE(hull_membership({{q(2), q(-1)}}, {q(2), q(0)}));
  const auto cert = hull_certificate(triangle(), {q(1, 3), q(1, 3)});
  ASSERT_TRUE(cert);
  EXPECT_EQ(*cert, (std::vector<Rational>{q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_THROW(hull_membership({}, {q(0)}), DomainError);
  EXPECT_THROW(hull_membership({{q(0), q(0)}}, {q(0)}), DomainError);
}

TEST(Hull, AgreesWithCaratheodoryOracle) {
  std::size_t inside = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = CaseRng::for_case(55, "hull", i);
    const auto dim = static_cast<std::size_t>(rng.between(1, 3));
    const auto count = static_cast<std::size_t>(rng.between(1, 7));
    Points v(count, std::vector<Rational>(dim));
    for (auto& p : v)
      for (auto& c : p) c = rng.in_range(q(-1), q(1), 4);
    std::vector<Rational> x(dim);
    for (auto& c : x) c = rng.in_range(q(-1), q(1), 4);
    const bool expected = oracle::in_hull(v, x);
    ASSERT_EQ(hull_membership(v, x), expected) << "case " << i;
    inside += expected ? 1 : 0;
  }
  EXPECT_GT(inside, 10u);
}

TEST(ExtendToConvex, Examples) {
  const auto s = FinSpace::discrete(3);
  const auto centroid = extend_to_convex(Functional::extensional(s, {q(1, 3), q(1, 3), q(1, 3)}), triangle());
  EXPECT_EQ(centroid, (std::vector<Rational>{q(1, 3), q(1, 3)}));
  EXPECT_TRUE(hull_membership(triangle(), centroid));
  EXPECT_EQ(extend_to_convex(eta_S(s, 1), triangle()), triangle()[1]);
  EXPECT_THROW(extend_to_convex(max_functional(s), triangle()), DomainError);
}

TEST(ExtendToConvex, StaysInsideRandomPolytopes) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = CaseRng::for_case(56, "extend", i);
    const auto dim = static_cast<std::size_t>(rng.between(1, 3));
    const auto count = static_cast<std::size_t>(rng.between(1, 10));
    Points v(count, std::vector<Rational>(dim));
    for (auto& p : v)
      for (auto& c : p) c = rng.in_range(q(-2), q(2), 12);
    const auto s = harness::generate_space(rng, 8);
    Points f;
    for (std::size_t a = 0; a < s.atom_count(); ++a) f.push_back(v[rng.below(count)]);
    const auto x = extend_to_convex(harness::generate_extensional(s, rng), f);
    ASSERT_TRUE(hull_membership(v, x));
    ASSERT_TRUE(oracle::in_hull(v, x));
  }
}

TEST(NaturalitySuite, Passes) {
  for (const auto* name : {"naturality", "monoid-reduction", "convex-bound"}) {
    const auto report = harness::run_suite(name, harness::SuiteConfig{});
    for (const auto& r : report.records) EXPECT_TRUE(r.passed) << name << "/" << r.name << ": " << r.witness.dump();
  }
}
