#include <gtest/gtest.h>

#include "girylab.hpp"
#include "oracles.hpp"

using namespace girylab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

oracle::Matrix dense(const Kernel& k) {
  oracle::Matrix m;
  for (std::size_t i = 0; i < k.dom().size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < k.cod().size(); ++j) row.push_back(k.at_point(i).weight(k.cod().atom_of(j)));
    m.push_back(std::move(row));
  }
  return m;
}

Kernel absorbing() {
  const auto s = FinSpace::discrete(2);
  return Kernel(s, s, {Measure(s, {q(1, 2), q(1, 2)}), Measure(s, {q(0), q(1)})});
}

}  // namespace

TEST(Unit, Dirac) {
  EXPECT_EQ(unit(FinSpace::discrete({"a", "b", "c"}), "a").weights(), (std::vector<Rational>{1, 0, 0}));
  const auto s = FinSpace::generate({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a"}});
  EXPECT_EQ(unit(s, "c").weights(), (std::vector<Rational>{0, 1}));
  EXPECT_THROW(unit(s, "z"), DomainError);
}

TEST(Mu, Examples) {
  const auto s = FinSpace::discrete({"a", "b"});
  const auto pi = Measure(s, {q(1, 3), q(2, 3)});
  EXPECT_EQ(mu(MetaMeasure::point(pi)), pi);
  const MetaMeasure rho(s, Mixture<Measure>({{unit(s, "a"), q(1, 2)}, {Measure::uniform(s), q(1, 2)}}));
  EXPECT_EQ(mu(rho).weights(), (std::vector<Rational>{q(3, 4), q(1, 4)}));
  const MetaMeasure same(s, Mixture<Measure>({{pi, q(1, 5)}, {pi, q(4, 5)}}));
  EXPECT_EQ(mu(same), pi);
}

TEST(Mu, AgreesWithMixtureOracleOnEverySet) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(31, "mixture", i);
    const auto s = harness::generate_space(rng, 8);
    const auto k = 1 + rng.below(4);
    const auto w = random_simplex_point(k, rng);
    std::vector<Mixture<Measure>::Entry> es;
    for (std::size_t j = 0; j < k; ++j) es.emplace_back(harness::generate_measure(s, rng), w[j]);
    const MetaMeasure rho(s, Mixture<Measure>(es));
    const auto m = mu(rho);
    for (const auto set : s.sigma()) {
      Rational expected = 0;
      for (const auto& [pi, weight] : es) expected += weight * measure_of(pi, set);
      ASSERT_EQ(measure_of(m, set), expected);
    }
  }
}

TEST(Mixture, RejectsBadWeights) {
  const auto s = FinSpace::discrete(2);
  EXPECT_THROW(Mixture<Measure>({{unit(s, 0), q(1, 2)}}), DomainError);
  EXPECT_THROW(Mixture<Measure>({{unit(s, 0), q(3, 2)}, {unit(s, 1), q(-1, 2)}}), DomainError);
  EXPECT_THROW(MetaMeasure(FinSpace::discrete(3), Mixture<Measure>::point(unit(s, 0))), DomainError);
}

TEST(Bind, AbsorbingChainTwice) {
  const auto k = absorbing();
  const auto s = k.dom();
  const auto once = bind(unit(s, 0), k);
  EXPECT_EQ(once.weights(), (std::vector<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_EQ(bind(once, k).weights(), (std::vector<Rational>{q(1, 4), q(3, 4)}));
}

TEST(NStep, Examples) {
  const auto k = absorbing();
  const auto pi0 = unit(k.dom(), 0);
  EXPECT_EQ(n_step(k, pi0, 0), pi0);
  EXPECT_EQ(n_step(k, pi0, 2).weights(), (std::vector<Rational>{q(1, 4), q(3, 4)}));
  // Matrix-power oracle.
  auto p = dense(k);
  oracle::Matrix power = p;
  for (int n = 2; n <= 12; ++n) {
    power = oracle::multiply(power, p);
    EXPECT_EQ(n_step(k, pi0, static_cast<std::size_t>(n)).weights(), power[0]);
  }
  const auto traj = trajectory(k, pi0, 3);
  ASSERT_EQ(traj.size(), 4u);
  EXPECT_EQ(traj[3].weights(), (std::vector<Rational>{q(1, 8), q(7, 8)}));
}

TEST(NStep, DoublyStochasticPreservesUniform) {
  const auto s = FinSpace::discrete(3);
  const Kernel k(s, s,
                 {Measure(s, {q(1, 2), q(1, 3), q(1, 6)}), Measure(s, {q(1, 6), q(1, 2), q(1, 3)}),
                  Measure(s, {q(1, 3), q(1, 6), q(1, 2)})});
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(n_step(k, Measure::uniform(s), n), Measure::uniform(s));
}

TEST(NStep, RequiresEndomorphism) {
  const auto a = FinSpace::discrete(2), b = FinSpace::discrete(3);
  const Kernel k(a, b, {Measure::uniform(b), Measure::uniform(b)});
  EXPECT_THROW(n_step(k, Measure::uniform(a), 1), DomainError);
}

TEST(Kleisli, UnitsAndMatrixProduct) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(32, "matrix", i);
    const auto a = FinSpace::discrete(1 + rng.below(4));
    const auto b = FinSpace::discrete(1 + rng.below(4));
    const auto c = FinSpace::discrete(1 + rng.below(4));
    const auto k1 = harness::generate_kernel(a, b, rng);
    const auto k2 = harness::generate_kernel(b, c, rng);
    ASSERT_EQ(kleisli_compose(Kernel::identity(a), k1), k1);
    ASSERT_EQ(kleisli_compose(k1, Kernel::identity(b)), k1);
    ASSERT_EQ(dense(kleisli_compose(k1, k2)), oracle::multiply(dense(k1), dense(k2)));
    const auto pi = harness::generate_measure(a, rng);
    ASSERT_EQ(bind(pi, k1).weights(), oracle::row_times(pi.weights(), dense(k1)));
  }
}

TEST(Kleisli, AssociativeOnRandomTriples) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = CaseRng::for_case(33, "assoc", i);
    const auto a = harness::generate_space(rng, 6), b = harness::generate_space(rng, 6);
    const auto c = harness::generate_space(rng, 6), d = harness::generate_space(rng, 6);
    const auto k1 = harness::generate_kernel(a, b, rng);
    const auto k2 = harness::generate_kernel(b, c, rng);
    const auto k3 = harness::generate_kernel(c, d, rng);
    ASSERT_EQ(kleisli_compose(kleisli_compose(k1, k2), k3), kleisli_compose(k1, kleisli_compose(k2, k3)));
  }
}

TEST(Kernel, Validation) {
  const auto a = FinSpace::discrete(2), b = FinSpace::discrete(3);
  EXPECT_THROW(Kernel(a, b, {Measure::uniform(b)}), DomainError);
  EXPECT_THROW(Kernel(a, b, {Measure::uniform(b), Measure::uniform(a)}), DomainError);
  EXPECT_THROW(kleisli_compose(Kernel::identity(a), Kernel::identity(b)), DomainError);
}

TEST(Kernel, FromMapIsPushforward) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = CaseRng::for_case(34, "from-map", i);
    const auto dom = harness::generate_space(rng, 6), cod = harness::generate_space(rng, 6);
    const auto g = harness::generate_map(dom, cod, rng);
    const auto pi = harness::generate_measure(dom, rng);
    ASSERT_EQ(bind(pi, Kernel::from_map(g)), pushforward(g, pi));
  }
}

TEST(MonadLaws, SuitePassesAt500Trials) {
  harness::SuiteConfig cfg;
  cfg.trials = 500;
  const auto report = harness::run_suite("monad-laws", cfg);
  for (const auto& r : report.records) EXPECT_TRUE(r.passed) << r.name << ": " << r.witness.dump();
}
