#pragma once

// Property suites over randomly generated finite data. Every case draws from
// its own stream derived from (seed, property, case index), so reports are
// reproducible and independent of execution order.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "girylab/codensity.hpp"
#include "girylab/counterexample.hpp"
#include "girylab/duality.hpp"
#include "girylab/error.hpp"
#include "girylab/giry.hpp"
#include "girylab/measure.hpp"
#include "girylab/random.hpp"
#include "girylab/sigma.hpp"
#include "girylab/verdict.hpp"

namespace girylab::harness {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::size_t max_carrier = 8;
  std::size_t max_arity = 4;
  std::size_t max_hull_dim = 3;

  void validate() const {
    if (trials < 1 || max_carrier < 1 || max_arity < 1 || max_hull_dim < 1)
      throw UsageError("trials, max_carrier, max_arity and max_hull_dim must all be at least 1");
    if (max_carrier > kDefaultCarrierCap) throw UsageError("max_carrier above " + std::to_string(kDefaultCarrierCap));
    if (max_hull_dim > kDefaultHullDimCap) throw UsageError("max_hull_dim above " + std::to_string(kDefaultHullDimCap));
  }
};

/// Case size; shrinking walks these down.
struct Size {
  std::size_t carrier;
  std::size_t arity;
};

struct CaseResult {
  bool passed = true;
  Json witness = nullptr;

  static CaseResult ok(Json w = nullptr) { return {true, std::move(w)}; }
  static CaseResult fail(Json w) { return {false, std::move(w)}; }
};

using CaseFn = std::function<CaseResult(CaseRng&, const Size&)>;

struct Property {
  std::string name;
  std::string anchor;  // the mathematical statement being exercised
  std::size_t trials;
  CaseFn run;
  bool shrinkable = true;
};

struct PropertyRecord {
  std::string name;
  std::string anchor;
  bool passed = true;
  Json witness = nullptr;   // first failure, or an illustrative witness for passes
  Json shrunk = nullptr;    // smaller failing case, when one was found
  std::size_t trials = 0;
  std::int64_t duration_us = 0;
};

struct Report {
  std::string suite;
  SuiteConfig config;
  std::vector<PropertyRecord> records;

  bool passed() const {
    return std::all_of(records.begin(), records.end(), [](const PropertyRecord& r) { return r.passed; });
  }

  /// Durations are left out unless asked for, which keeps reports
  /// byte-identical across runs with the same seed and config.
  Json to_json(bool with_timing = false) const {
    Json props = Json::array();
    for (const auto& r : records) {
      Json p{{"name", r.name}, {"anchor", r.anchor}, {"result", r.passed ? "pass" : "fail"}, {"trials", r.trials}};
      p["witness"] = r.witness;
      if (!r.shrunk.is_null()) p["shrunk_witness"] = r.shrunk;
      if (with_timing) p["duration_ms"] = to_string(make_rational(r.duration_us, 1000));
      props.push_back(std::move(p));
    }
    return Json{{"suite", suite},
                {"config",
                 {{"seed", config.seed},
                  {"trials", config.trials},
                  {"max_carrier", config.max_carrier},
                  {"max_arity", config.max_arity},
                  {"max_hull_dim", config.max_hull_dim}}},
                {"result", passed() ? "pass" : "fail"},
                {"properties", props}};
  }

  static Report from_json(const Json& j) {
    Report r;
    r.suite = j.at("suite").get<std::string>();
    const Json& c = j.at("config");
    r.config = {c.at("seed").get<std::uint64_t>(), c.at("trials").get<std::size_t>(), c.at("max_carrier").get<std::size_t>(),
                c.at("max_arity").get<std::size_t>(), c.at("max_hull_dim").get<std::size_t>()};
    for (const auto& p : j.at("properties")) {
      PropertyRecord rec{p.at("name").get<std::string>(), p.at("anchor").get<std::string>()};
      rec.passed = p.at("result").get<std::string>() == "pass";
      rec.trials = p.at("trials").get<std::size_t>();
      rec.witness = p.value("witness", Json());
      rec.shrunk = p.value("shrunk_witness", Json());
      r.records.push_back(std::move(rec));
    }
    return r;
  }

  std::string to_text() const {
    std::ostringstream os;
    std::size_t failures = 0;
    for (const auto& r : records) {
      failures += r.passed ? 0 : 1;
      os << (r.passed ? "PASS " : "FAIL ") << suite << "/" << r.name << " (" << r.trials << " trials)\n";
      if (!r.passed) {
        os << "     anchor:  " << r.anchor << "\n";
        os << "     witness: " << r.witness.dump() << "\n";
        if (!r.shrunk.is_null()) os << "     shrunk:  " << r.shrunk.dump() << "\n";
      }
    }
    os << suite << ": " << records.size() - failures << "/" << records.size() << " properties passed, seed " << config.seed << "\n";
    return os.str();
  }

  std::string to_junit() const {
    auto escape = [](const std::string& s) {
      std::string out;
      for (const char c : s) {
        switch (c) {
          case '&': out += "&amp;"; break;
          case '<': out += "&lt;"; break;
          case '>': out += "&gt;"; break;
          case '"': out += "&quot;"; break;
          default: out += c;
        }
      }
      return out;
    };
    std::size_t failures = 0;
    for (const auto& r : records) failures += r.passed ? 0 : 1;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuite name=\"" << escape(suite) << "\" tests=\"" << records.size() << "\" failures=\"" << failures << "\">\n";
    for (const auto& r : records) {
      os << "  <testcase classname=\"" << escape(suite) << "\" name=\"" << escape(r.name) << "\"";
      if (r.passed) {
        os << "/>\n";
      } else {
        os << ">\n    <failure message=\"" << escape(r.anchor) << "\">" << escape(r.witness.dump()) << "</failure>\n  </testcase>\n";
      }
    }
    os << "</testsuite>\n";
    return os.str();
  }
};

// -- generators -------------------------------------------------------------------

/// Random space with between `min_atoms` and `max_points` points; the
/// sigma-algebra is generated from a few random subsets.
inline FinSpace generate_space(CaseRng& rng, std::size_t max_points, std::size_t min_atoms = 1) {
  max_points = std::max(max_points, min_atoms);
  for (;;) {
    const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(min_atoms), static_cast<std::int64_t>(max_points)));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    std::vector<PointSet> gens;
    if (rng.chance(1, 4)) {
      for (std::size_t i = 0; i < n; ++i) gens.push_back(singleton(i));
    } else {
      const auto k = rng.below(n + 1);
      for (std::uint64_t i = 0; i < k; ++i) gens.push_back(rng.next() & full_set(n));
    }
    FinSpace s = FinSpace::generate(std::move(labels), gens, std::max(n, kDefaultCarrierCap));
    if (s.atom_count() >= min_atoms) return s;
  }
}

inline Measure generate_measure(const FinSpace& space, CaseRng& rng) {
  return Measure(space, random_simplex_point(space.atom_count(), rng));
}

inline Kernel generate_kernel(const FinSpace& dom, const FinSpace& cod, CaseRng& rng) {
  std::vector<Measure> rows;
  for (std::size_t a = 0; a < dom.atom_count(); ++a) rows.push_back(generate_measure(cod, rng));
  return Kernel(dom, cod, std::move(rows));
}

/// Measurable map: every domain atom lands inside a single codomain atom.
inline MeasMap generate_map(const FinSpace& dom, const FinSpace& cod, CaseRng& rng) {
  std::vector<std::size_t> table(dom.size());
  for (std::size_t a = 0; a < dom.atom_count(); ++a) {
    const PointSet target_atom = cod.atoms()[rng.below(cod.atom_count())];
    const auto members = cod.labels_of(target_atom);
    for (std::size_t p = 0; p < dom.size(); ++p)
      if (dom.atom_of(p) == a) table[p] = cod.point_index(members[rng.below(members.size())]);
  }
  return MeasMap(dom, cod, std::move(table));
}

inline Functional generate_extensional(const FinSpace& space, CaseRng& rng) {
  return Functional::extensional(space, random_simplex_point(space.atom_count(), rng));
}

inline Functional generate_adversarial(const FinSpace& space, CaseRng& rng) {
  switch (rng.below(3)) {
    case 0: return max_functional(space);
    case 1: return square_functional(space, rng.below(space.size()));
    default: return clamped_sum_functional(space);
  }
}

/// Extensional with probability 1 − adversarial_percent/100, otherwise one
/// of the non-affine functionals (max, square, clamped sum).
inline Functional generate_functional(const FinSpace& space, CaseRng& rng, unsigned adversarial_percent = 20) {
  if (rng.below(100) < adversarial_percent) return generate_adversarial(space, rng);
  return generate_extensional(space, rng);
}

inline std::vector<IFunction> generate_tuple(const FinSpace& space, std::size_t n, CaseRng& rng) {
  std::vector<IFunction> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_ifunction(space, rng));
  return out;
}

inline D0Map generate_d0_map(const FinSpace& space, CaseRng& rng, std::size_t max_len = 5) {
  std::vector<IFunction> entries;
  const auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i)
    entries.push_back(rng.chance(1, 5) ? IFunction::constant(space, 0) : random_ifunction(space, rng));
  return D0Map(space, std::move(entries));
}

// -- running ----------------------------------------------------------------------

inline constexpr std::size_t kShrinkSteps = 1000;

namespace detail {

inline CaseResult run_case(const Property& p, CaseRng& rng, const Size& size) {
  try {
    return p.run(rng, size);
  } catch (const std::exception& e) {
    return CaseResult::fail(Json{{"exception", e.what()}});
  }
}

/// Looks for a failing case at smaller sizes, smallest total size first.
inline Json shrink(const Property& p, const SuiteConfig& cfg, const Size& failed_at) {
  std::vector<Size> sizes;
  for (std::size_t c = 1; c <= failed_at.carrier; ++c)
    for (std::size_t a = 1; a <= failed_at.arity; ++a)
      if (c + a < failed_at.carrier + failed_at.arity) sizes.push_back({c, a});
  std::stable_sort(sizes.begin(), sizes.end(), [](const Size& x, const Size& y) { return x.carrier + x.arity < y.carrier + y.arity; });
  if (sizes.empty()) return nullptr;
  const std::size_t per_size = std::max<std::size_t>(1, kShrinkSteps / sizes.size());
  std::size_t steps = 0;
  for (const auto& s : sizes) {
    for (std::size_t i = 0; i < per_size && steps < kShrinkSteps; ++i, ++steps) {
      auto rng = CaseRng::for_case(cfg.seed, p.name + "/shrink", steps);
      auto r = run_case(p, rng, s);
      if (!r.passed) return Json{{"max_carrier", s.carrier}, {"max_arity", s.arity}, {"witness", r.witness}};
    }
  }
  return nullptr;
}

}  // namespace detail

inline PropertyRecord run_property(const Property& p, const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  PropertyRecord rec{p.name, p.anchor};
  rec.trials = p.trials;
  const Size full{cfg.max_carrier, cfg.max_arity};
  for (std::size_t i = 0; i < p.trials; ++i) {
    auto rng = CaseRng::for_case(cfg.seed, p.name, i);
    auto r = detail::run_case(p, rng, full);
    if (!r.passed) {
      rec.passed = false;
      rec.witness = Json{{"case", i}, {"detail", r.witness}};
      if (p.shrinkable) rec.shrunk = detail::shrink(p, cfg, full);
      break;
    }
    if (rec.witness.is_null() && !r.witness.is_null()) rec.witness = Json{{"case", i}, {"example", r.witness}};
  }
  rec.duration_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// -- suites -------------------------------------------------------------------------

namespace suites {

inline CaseResult expect(bool cond, Json witness) { return cond ? CaseResult::ok() : CaseResult::fail(std::move(witness)); }

inline Json measure_json(const Measure& m) { return rationals_json(m.weights()); }

inline std::vector<Property> monad_laws(const SuiteConfig& cfg) {
  const std::string anchor = "monad laws of the finitely additive Giry monad (Dirac unit, multiplication by integrating ev_A)";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"left-unit", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto pi = generate_measure(space, rng);
                  const auto got = mu(MetaMeasure::point(pi));
                  return expect(got == pi, Json{{"pi", measure_json(pi)}, {"mu(delta_pi)", measure_json(got)}});
                }});
  ps.push_back({"right-unit", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto pi = generate_measure(space, rng);
                  std::vector<Mixture<Measure>::Entry> diracs;
                  for (std::size_t a = 0; a < space.atom_count(); ++a)
                    diracs.emplace_back(unit(space, space.representative(a)), pi.weight(a));
                  const auto got = mu(MetaMeasure(space, Mixture<Measure>(std::move(diracs))));
                  return expect(got == pi, Json{{"pi", measure_json(pi)}, {"mu(F eta (pi))", measure_json(got)}});
                }});
  ps.push_back({"associativity", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  auto layer = [&](auto make, std::size_t k) {
                    using T = decltype(make());
                    const auto w = random_simplex_point(k, rng);
                    std::vector<typename Mixture<T>::Entry> es;
                    for (std::size_t i = 0; i < k; ++i) es.emplace_back(make(), w[i]);
                    return Mixture<T>(std::move(es));
                  };
                  auto make_measure = [&] { return generate_measure(space, rng); };
                  auto make_meta = [&] { return layer(make_measure, 1 + rng.below(3)); };
                  const Mixture<Mixture<Measure>> triple = layer(make_meta, 1 + rng.below(3));
                  const auto lhs = mu(MetaMeasure(space, triple.map([&](const Mixture<Measure>& m) { return mu(MetaMeasure(space, m)); })));
                  const auto rhs = mu(MetaMeasure(space, flatten(triple)));
                  return expect(lhs == rhs, Json{{"mu.F(mu)", measure_json(lhs)}, {"mu.mu", measure_json(rhs)}});
                }});
  ps.push_back({"bind-left-unit", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto k = generate_kernel(dom, cod, rng);
                  const auto w = rng.below(dom.size());
                  return expect(bind(unit(dom, w), k) == k.at_point(w), Json{{"point", w}});
                }});
  ps.push_back({"bind-right-unit", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto pi = generate_measure(space, rng);
                  return expect(bind(pi, Kernel::identity(space)) == pi, Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"kleisli-associativity", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto a = generate_space(rng, s.carrier);
                  const auto b = generate_space(rng, s.carrier);
                  const auto c = generate_space(rng, s.carrier);
                  const auto d = generate_space(rng, s.carrier);
                  const auto k1 = generate_kernel(a, b, rng);
                  const auto k2 = generate_kernel(b, c, rng);
                  const auto k3 = generate_kernel(c, d, rng);
                  return expect(kleisli_compose(kleisli_compose(k1, k2), k3) == kleisli_compose(k1, kleisli_compose(k2, k3)),
                                Json{{"atoms", {a.atom_count(), b.atom_count(), c.atom_count(), d.atom_count()}}});
                }});
  ps.push_back({"bind-is-mu-of-pushforward", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto k = generate_kernel(dom, cod, rng);
                  const auto pi = generate_measure(dom, rng);
                  std::vector<Mixture<Measure>::Entry> es;
                  for (std::size_t a = 0; a < dom.atom_count(); ++a) es.emplace_back(k.row(a), pi.weight(a));
                  const auto via_mu = mu(MetaMeasure(cod, Mixture<Measure>(std::move(es))));
                  return expect(bind(pi, k) == via_mu, Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"unit-naturality", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto g = generate_map(dom, cod, rng);
                  const auto w = rng.below(dom.size());
                  return expect(pushforward(g, unit(dom, w)) == unit(cod, g(w)), Json{{"point", w}});
                }});
  ps.push_back({"mu-naturality", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto g = generate_map(dom, cod, rng);
                  const auto k = 1 + rng.below(4);
                  const auto w = random_simplex_point(k, rng);
                  std::vector<Mixture<Measure>::Entry> es;
                  for (std::size_t i = 0; i < k; ++i) es.emplace_back(generate_measure(dom, rng), w[i]);
                  const Mixture<Measure> rho(std::move(es));
                  const auto lhs = pushforward(g, mu(MetaMeasure(dom, rho)));
                  const auto rhs = mu(MetaMeasure(cod, rho.map([&](const Measure& m) { return pushforward(g, m); })));
                  return expect(lhs == rhs, Json{{"lhs", measure_json(lhs)}, {"rhs", measure_json(rhs)}});
                }});
  ps.push_back({"bind-is-matrix-product", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = FinSpace::discrete(static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(s.carrier))));
                  const auto cod = FinSpace::discrete(static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(s.carrier))));
                  const auto k = generate_kernel(dom, cod, rng);
                  const auto pi = generate_measure(dom, rng);
                  const auto got = bind(pi, k);
                  // Row vector times stochastic matrix, entry by entry over points.
                  for (std::size_t j = 0; j < cod.size(); ++j) {
                    Rational entry = 0;
                    for (std::size_t i = 0; i < dom.size(); ++i) entry += pi.weight(dom.atom_of(i)) * k.at_point(i).weight(cod.atom_of(j));
                    if (measure_of(got, singleton(j)) != entry) return CaseResult::fail(Json{{"column", j}});
                  }
                  return CaseResult::ok();
                }});
  return ps;
}

inline std::vector<Property> duality(const SuiteConfig& cfg) {
  const std::string bij = "Lambda is a bijection between affine weakly averaging functionals and finitely additive measures";
  const std::string mnd = "the transported monad structure: eta_S(w)(f) = f(w), mu_S(psi)(f) = psi(ev_f)";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"lambda-after-lambda-tilde", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto pi = generate_measure(generate_space(rng, s.carrier), rng);
                  return expect(lambda(lambda_tilde(pi)) == pi, Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"lambda-tilde-after-lambda", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto phi = generate_extensional(generate_space(rng, s.carrier), rng);
                  const auto back = lambda_tilde(lambda(phi));
                  return expect(back.coefficients() == phi.coefficients(), Json{{"coefficients", rationals_json(phi.coefficients())}});
                }});
  ps.push_back({"lambda-reproduces-intensional-integral", bij, std::max<std::size_t>(1, n / 5), [](CaseRng& rng, const Size& s) {
                  // An integral presented only as a closure goes through the screening path.
                  const auto pi = generate_measure(generate_space(rng, s.carrier), rng);
                  const auto phi = Functional::intensional(pi.space(), [pi](const IFunction& f) { return integrate(f, pi); }, "integral");
                  return expect(lambda(phi, 16, rng.next()) == pi, Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"lambda-rejects-max", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, std::max<std::size_t>(2, s.carrier), 2);
                  try {
                    (void)lambda(max_functional(space));
                  } catch (const NotIntegrationOperator& e) {
                    const auto& w = e.verdict().witness;
                    const bool explicit_sum = w.value("check", "") == "additivity" &&
                                              w.value("sum", "") == std::to_string(space.atom_count()) + "/1";
                    return explicit_sum ? CaseResult::ok(w) : CaseResult::fail(w);
                  }
                  return CaseResult::fail(Json{{"atoms", space.atom_count()}, {"error", "max functional accepted"}});
                }});
  ps.push_back({"square-i-unit", mnd, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto w = rng.below(space.size());
                  const auto phi = eta_S(space, w);
                  const auto f = random_ifunction(space, rng);
                  return expect(lambda(phi) == unit(space, w) && phi(f) == f.at_point(w), Json{{"point", w}});
                }});
  ps.push_back({"square-ii-multiplication", mnd, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto k = 1 + rng.below(4);
                  const auto w = random_simplex_point(k, rng);
                  std::vector<Mixture<Functional>::Entry> es;
                  for (std::size_t i = 0; i < k; ++i) es.emplace_back(generate_extensional(space, rng), w[i]);
                  const FunctionalMixture psi(space, Mixture<Functional>(std::move(es)));
                  const auto lhs = lambda(mu_S(psi));
                  const auto rhs = mu(lambda_image(psi));
                  // mu_S(psi)(f) = psi(ev_f) on a random f as well.
                  const auto f = random_ifunction(space, rng);
                  Rational direct = 0;
                  for (const auto& [phi, weight] : psi.support().entries()) direct += weight * phi(f);
                  return expect(lhs == rhs && mu_S(psi)(f) == direct, Json{{"lhs", measure_json(lhs)}, {"rhs", measure_json(rhs)}});
                }});
  ps.push_back({"mu-S-unit", mnd, n, [](CaseRng& rng, const Size& s) {
                  const auto phi = generate_extensional(generate_space(rng, s.carrier), rng);
                  const auto got = mu_S(FunctionalMixture(phi.space(), Mixture<Functional>::point(phi)));
                  return expect(got.coefficients() == phi.coefficients(), Json{{"coefficients", rationals_json(phi.coefficients())}});
                }});
  ps.push_back({"lambda-naturality", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto g = generate_map(dom, cod, rng);
                  const auto phi = generate_extensional(dom, rng);
                  const auto f = random_ifunction(cod, rng);
                  const auto pushed = S_map(g, phi);
                  return expect(lambda(pushed) == pushforward(g, lambda(phi)) && pushed(f) == phi(precompose(f, g)),
                                Json{{"coefficients", rationals_json(phi.coefficients())}});
                }});
  ps.push_back({"extensional-characterization", bij, std::max<std::size_t>(1, n / 5), [](CaseRng& rng, const Size& s) {
                  // Affine functionals a0 + Σ a_i f(atom_i) into I: weakly averaging
                  // exactly when a0 = 0, a_i >= 0 and Σ a_i = 1.
                  const auto space = generate_space(rng, s.carrier);
                  const std::size_t k = space.atom_count();
                  Rational a0;
                  std::vector<Rational> a;
                  if (rng.chance(1, 2)) {
                    a0 = 0;
                    a = random_simplex_point(k, rng);
                  } else {
                    auto h = sample_affine(k, rng);
                    a0 = h.a0;
                    a = h.a;
                  }
                  const auto phi = Functional::intensional(
                      space,
                      [a0, a](const IFunction& f) {
                        Rational t = a0;
                        for (std::size_t i = 0; i < a.size(); ++i) t += a[i] * f.at_atom(i);
                        return t;
                      },
                      "affine-form");
                  const auto seed = rng.next();
                  const bool axioms = is_affine(phi, 16, seed).passed && is_weakly_averaging(phi, 16, seed).passed;
                  const auto cf = canonical_form(phi);
                  bool matches = cf.a0 == a0 && cf.a == a;
                  for (int t = 0; t < 4; ++t) {
                    const auto f = random_ifunction(space, rng);
                    matches = matches && cf(f) == phi(f);
                  }
                  return expect(matches && axioms == cf.is_integration_operator(),
                                Json{{"a0", to_string(a0)}, {"a", rationals_json(a)}, {"axioms", axioms}});
                }});
  ps.push_back({"integration-operator-consequences", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto phi = generate_extensional(generate_space(rng, s.carrier), rng);
                  auto v = integration_operator_properties(phi, 8, rng.next());
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"adversarial-functionals-refuted", bij, std::max<std::size_t>(1, n / 5), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, std::max<std::size_t>(2, s.carrier), 2);
                  const auto phi = generate_adversarial(space, rng);
                  const auto seed = rng.next();
                  for (auto v : {is_affine(phi, 16, seed), is_weakly_averaging(phi, 16, seed)})
                    if (!v.passed) return CaseResult::ok(to_json(v));
                  return CaseResult::fail(Json{{"functional", phi.label()}, {"error", "not refuted"}});
                }});
  ps.push_back({"respects-limits-finite", bij, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto phi = generate_extensional(space, rng);
                  LimitWitness w;
                  for (std::size_t a = 0; a < space.atom_count(); ++a) w.zero_from.push_back(rng.below(6));
                  const std::size_t len = *std::max_element(w.zero_from.begin(), w.zero_from.end());
                  for (std::size_t t = 0; t < len; ++t) {
                    std::vector<Rational> vals(space.atom_count());
                    for (std::size_t a = 0; a < vals.size(); ++a) vals[a] = t < w.zero_from[a] ? rng.unit() : Rational(0);
                    w.terms.emplace_back(space, std::move(vals));
                  }
                  auto v = respects_limits(phi, w);
                  return expect(v.passed, to_json(v));
                }});
  return ps;
}

/// Polynomial integrands of degree <= 2 with exact integrals against
/// interval mixtures: f(x) = c0 + c1 x + c2 x^2.
struct Quadratic {
  std::string name;
  Rational c0, c1, c2;
  Rational lipschitz;  // bound on |f'| over [0,1]

  Rational operator()(const Rational& x) const { return c0 + c1 * x + c2 * x * x; }

  Rational exact(const IntervalMeasure& m) const {
    Rational total = 0;
    for (const auto& p : m.points()) total += p.mass * (*this)(p.location);
    for (const auto& u : m.pieces()) {
      const Rational& a = u.lo;
      const Rational& b = u.hi;
      total += u.mass * (c0 + c1 * (a + b) / 2 + c2 * (a * a + a * b + b * b) / 3);
    }
    return total;
  }

  Modulus modulus() const {
    const Rational l = lipschitz;
    return [l](const Rational& eps) { return eps / l; };
  }
};

inline std::vector<Quadratic> quadratic_family() {
  return {{"x", 0, 1, 0, 1},
          {"x^2", 0, 0, 1, 2},
          {"1-x", 1, -1, 0, 1},
          {"x(1-x)", 0, 1, -1, 1},
          {"(1+x^2)/2", make_rational(1, 2), 0, make_rational(1, 2), 1}};
}

inline IntervalMeasure generate_interval_measure(CaseRng& rng) {
  const auto np = rng.below(3);
  const auto nu = np == 0 ? 1 + rng.below(3) : rng.below(3);
  const auto w = random_simplex_point(np + nu, rng);
  std::vector<PointMass> points;
  std::vector<UniformPiece> pieces;
  for (std::uint64_t i = 0; i < np; ++i) points.push_back({rng.unit(32), w[i]});
  for (std::uint64_t i = 0; i < nu; ++i) {
    Rational a = rng.unit(32), b = rng.unit(32);
    if (a == b) b = a == 1 ? Rational(0) : Rational(1);
    if (a > b) std::swap(a, b);
    pieces.push_back({a, b, w[np + i]});
  }
  return IntervalMeasure(std::move(points), std::move(pieces));
}

inline std::vector<Property> change_of_variables(const SuiteConfig& cfg) {
  const std::string cov = "change of variables formula for push-forward measures";
  const std::string integ = "integration of simple functions is linear, order-preserving and representation independent";
  const std::string approx = "simple functions converging uniformly give converging integrals";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"change-of-variables", cov, n, [](CaseRng& rng, const Size& s) {
                  const auto dom = generate_space(rng, s.carrier);
                  const auto cod = generate_space(rng, s.carrier);
                  const auto g = generate_map(dom, cod, rng);
                  const auto pi = generate_measure(dom, rng);
                  const auto f = random_ifunction(cod, rng);
                  return expect(change_of_variables_check(g, pi, f), Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"pushforward-identity", cov, n, [](CaseRng& rng, const Size& s) {
                  const auto pi = generate_measure(generate_space(rng, s.carrier), rng);
                  return expect(pushforward(MeasMap::identity(pi.space()), pi) == pi, Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"pushforward-composition", cov, n, [](CaseRng& rng, const Size& s) {
                  const auto a = generate_space(rng, s.carrier);
                  const auto b = generate_space(rng, s.carrier);
                  const auto c = generate_space(rng, s.carrier);
                  const auto h = generate_map(a, b, rng);
                  const auto g = generate_map(b, c, rng);
                  const auto pi = generate_measure(a, rng);
                  const bool measurable = is_measurable(compose(g, h));
                  return expect(measurable && pushforward(compose(g, h), pi) == pushforward(g, pushforward(h, pi)),
                                Json{{"pi", measure_json(pi)}});
                }});
  ps.push_back({"integral-linear-monotone", integ, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto pi = generate_measure(space, rng);
                  const auto f = random_ifunction(space, rng);
                  const auto g = random_ifunction(space, rng);
                  const auto r = rng.unit();
                  const bool linear = integrate(mix(r, f, g), pi) == r * integrate(f, pi) + (1 - r) * integrate(g, pi);
                  const auto bigger = mix(r, f, IFunction::constant(space, 1));
                  const bool monotone = pointwise_leq(f, bigger) && integrate(f, pi) <= integrate(bigger, pi);
                  return expect(linear && monotone, Json{{"linear", linear}, {"monotone", monotone}});
                }});
  ps.push_back({"representation-independence", integ, n, [](CaseRng& rng, const Size& s) {
                  // Σ c_i χ_{A_i} over random measurable A_i, integrated as Σ c_i π(A_i),
                  // against the atomwise integral of the same function.
                  const auto space = generate_space(rng, s.carrier);
                  const auto pi = generate_measure(space, rng);
                  const auto terms = 1 + rng.below(4);
                  const auto budget = random_simplex_point(terms + 1, rng);
                  std::vector<Rational> vals(space.atom_count(), Rational(0));
                  Rational by_sets = 0;
                  for (std::uint64_t i = 0; i < terms; ++i) {
                    const PointSet set = space.sigma()[rng.below(space.sigma().size())];
                    by_sets += budget[i] * measure_of(pi, set);
                    for (const auto a : space.atoms_in(set)) vals[a] += budget[i];
                  }
                  const IFunction f(space, std::move(vals));
                  return expect(by_sets == integrate(f, pi), Json{{"by_sets", to_string(by_sets)}, {"atomwise", to_string(integrate(f, pi))}});
                }});
  const std::size_t approx_trials = std::max<std::size_t>(10, n / 25);
  ps.push_back({"approximation-within-tolerance", approx, approx_trials, [](CaseRng& rng, const Size&) {
                  const auto family = quadratic_family();
                  const auto& q = family[rng.below(family.size())];
                  const auto m = generate_interval_measure(rng);
                  const Rational eps = dyadic(static_cast<unsigned>(rng.between(3, 7)));
                  const auto b = approx_bracket(q, q.modulus(), eps, m);
                  const Rational exact = q.exact(m);
                  const bool ok = b.lower <= exact && exact <= b.upper && b.upper - b.lower <= eps && exact - b.lower <= eps;
                  return expect(ok, Json{{"f", q.name}, {"eps", to_string(eps)}, {"lower", to_string(b.lower)}, {"exact", to_string(exact)}, {"upper", to_string(b.upper)}});
                },
                false});
  ps.push_back({"approximation-monotone-refinement", approx, approx_trials, [](CaseRng& rng, const Size&) {
                  const auto family = quadratic_family();
                  const auto& q = family[rng.below(family.size())];
                  const auto m = generate_interval_measure(rng);
                  const auto rungs = approx_ladder(q, q.modulus(), {dyadic(3), dyadic(5), dyadic(7)}, m);
                  const Rational exact = q.exact(m);
                  bool ok = true;
                  for (std::size_t i = 0; i < rungs.size(); ++i) {
                    ok = ok && rungs[i].lower <= exact;
                    if (i > 0) ok = ok && rungs[i - 1].lower <= rungs[i].lower;
                  }
                  return expect(ok, Json{{"f", q.name}});
                },
                false});
  return ps;
}

namespace detail {

/// Bounded search for a failing naturality square: projections, constants
/// and convex pairs on boundary inputs, then random maps of arity <= 3.
inline std::optional<Verdict> find_naturality_refutation(const Functional& phi, CaseRng& rng, std::size_t random_tries = 200) {
  const auto alpha = lift(phi);
  const auto& space = phi.space();
  const auto boundary = girylab::detail::boundary_functions(space);
  for (const auto& r : {Rational(0), make_rational(1, 3), make_rational(1, 2), Rational(1)})
    if (auto v = check_naturality(alpha, AffineMapFin::constant(0, r), {}); !v.passed) return v;
  for (const auto& f : boundary)
    for (const auto& g : boundary)
      for (const auto& r : {make_rational(1, 2), make_rational(1, 3)})
        if (auto v = check_naturality(alpha, AffineMapFin::convex_pair(r), {f, g}); !v.passed) return v;
  for (std::size_t t = 0; t < random_tries; ++t) {
    const auto k = static_cast<std::size_t>(rng.between(0, 3));
    const auto h = sample_affine(k, rng);
    if (auto v = check_naturality(alpha, h, harness::generate_tuple(space, k, rng)); !v.passed) return v;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::vector<Property> naturality(const SuiteConfig& cfg) {
  const std::string anchor = "codensity monad of affine maps between powers of I is the finitely additive Giry monad";
  const std::string d0 = "with d0 adjoined the codensity monad is the countably additive Giry monad";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"lifted-extensional-natural", anchor, std::max<std::size_t>(1000, 2 * n), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto alpha = lift(generate_extensional(space, rng));
                  const auto arity = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity)));
                  // Force the boundary generators a quarter of the time each.
                  AffineMapFin h = sample_affine(arity, rng);
                  std::size_t k = arity;
                  switch (rng.below(4)) {
                    case 0:
                      k = std::max<std::size_t>(1, arity);
                      h = AffineMapFin::projection(k, rng.below(k));
                      break;
                    case 1: h = AffineMapFin::constant(arity, rng.unit()); break;
                    case 2:
                      k = 2;
                      h = AffineMapFin::convex_pair(rng.unit());
                      break;
                    default: break;
                  }
                  auto v = check_naturality(alpha, h, generate_tuple(space, k, rng));
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"lifted-extensional-natural-d0", d0, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto alpha = lift(generate_extensional(space, rng));
                  const auto f = generate_d0_map(space, rng, s.arity + 1);
                  const auto h = sample_affine_d0(static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity) + 2)), rng);
                  auto v = check_naturality(alpha, h, f);
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"projection-squares-commute", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto alpha = lift(generate_functional(space, rng, 50));
                  const auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(s.arity)));
                  auto v = check_naturality(alpha, AffineMapFin::projection(k, rng.below(k)), generate_tuple(space, k, rng));
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"max-refuted", anchor, std::max<std::size_t>(1, n / 10), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, std::max<std::size_t>(2, s.carrier), 2);
                  if (auto v = detail::find_naturality_refutation(max_functional(space), rng)) return CaseResult::ok(to_json(*v));
                  return CaseResult::fail(Json{{"atoms", space.atom_count()}, {"error", "no refutation found"}});
                }});
  ps.push_back({"square-refuted", anchor, std::max<std::size_t>(1, n / 10), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  if (auto v = detail::find_naturality_refutation(square_functional(space, rng.below(space.size())), rng))
                    return CaseResult::ok(to_json(*v));
                  return CaseResult::fail(Json{{"atoms", space.atom_count()}, {"error", "no refutation found"}});
                }});
  ps.push_back({"mixed-population", anchor, n, [](CaseRng& rng, const Size& s) {
                  // 20% adversarial: every adversarial functional is refuted,
                  // every extensional one survives a random square.
                  const auto space = generate_space(rng, std::max<std::size_t>(2, s.carrier), 2);
                  const auto phi = generate_functional(space, rng, 20);
                  if (!phi.is_extensional()) {
                    auto v = detail::find_naturality_refutation(phi, rng);
                    return v ? CaseResult::ok(to_json(*v)) : CaseResult::fail(Json{{"functional", phi.label()}, {"error", "not refuted"}});
                  }
                  const auto k = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity)));
                  auto v = check_naturality(lift(phi), sample_affine(k, rng), generate_tuple(space, k, rng));
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"respects-d0", d0, n, [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  auto v = respects_d0(lift(generate_extensional(space, rng)), generate_d0_map(space, rng, s.arity + 1));
                  return expect(v.passed, to_json(v));
                }});
  ps.push_back({"sampled-affine-maps-into-I", anchor, std::max<std::size_t>(1000, n), [](CaseRng& rng, const Size& s) {
                  // Independent check on every vertex of the cube.
                  const auto k = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity)));
                  const auto h = sample_affine(k, rng);
                  for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << k); ++corner) {
                    std::vector<Rational> x(k);
                    for (std::size_t i = 0; i < k; ++i) x[i] = (corner >> i) & 1 ? 1 : 0;
                    if (!in_unit_interval(apply_affine(h, x))) return CaseResult::fail(to_json(h));
                  }
                  return CaseResult::ok();
                }});
  ps.push_back({"affine-composition-closed", anchor, n, [](CaseRng& rng, const Size& s) {
                  const auto m = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity)));
                  const auto k = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(s.arity)));
                  const auto outer = sample_affine(m, rng);
                  std::vector<AffineMapFin> inner;
                  for (std::size_t j = 0; j < m; ++j) inner.push_back(sample_affine(k, rng));
                  const auto composite = compose(outer, inner, k);
                  std::vector<Rational> x(k);
                  for (auto& v : x) v = rng.unit();
                  std::vector<Rational> mid;
                  for (const auto& g : inner) mid.push_back(apply_affine(g, x));
                  return expect(composite.arity() == k && apply_affine(composite, x) == apply_affine(outer, mid), to_json(composite));
                }});
  return ps;
}

inline std::vector<Property> monoid_reduction(const SuiteConfig& cfg) {
  const std::string anchor = "the monoid of affine endomorphisms of d0 already determines the Giry monad";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"reconstruct-round-trip", anchor, std::max<std::size_t>(200, n / 2), [](CaseRng& rng, const Size& s) {
                  const auto phi = generate_extensional(generate_space(rng, s.carrier), rng);
                  const auto rec = reconstruct_phi(forget_to_d0(lift(phi)), 4, rng.next());
                  return expect(rec.ok() && rec.phi->coefficients() == phi.coefficients(),
                                Json{{"coefficients", rationals_json(phi.coefficients())}});
                }});
  ps.push_back({"entrywise-max-fails-convex-pair", anchor, std::max<std::size_t>(1, n / 10), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, std::max<std::size_t>(2, s.carrier), 2);
                  const auto rec = reconstruct_phi(entrywise_max_action(space), 4, rng.next());
                  for (const auto& v : rec.squares)
                    if (v.property == "square:convex-pair" && !v.passed) return CaseResult::ok(to_json(v));
                  return CaseResult::fail(Json{{"atoms", space.atom_count()}, {"error", "convex-pair square commuted"}});
                }});
  ps.push_back({"entrywise-eval-is-dirac", anchor, std::max<std::size_t>(1, n / 5), [](CaseRng& rng, const Size& s) {
                  const auto space = generate_space(rng, s.carrier);
                  const auto w = rng.below(space.size());
                  const auto rec = reconstruct_phi(entrywise_eval_action(space, w), 4, rng.next());
                  return expect(rec.ok() && rec.phi->coefficients() == eta_S(space, w).coefficients(), Json{{"point", w}});
                }});
  return ps;
}

inline std::vector<Property> convex_bound(const SuiteConfig& cfg) {
  const std::string anchor = "coordinatewise integrals of maps into a bounded convex set stay in the set";
  const std::size_t n = cfg.trials;
  const std::size_t max_dim = cfg.max_hull_dim;
  std::vector<Property> ps;
  auto polytope = [max_dim](CaseRng& rng) {
    const auto dim = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_dim)));
    const auto count = static_cast<std::size_t>(rng.between(1, 10));
    std::vector<std::vector<Rational>> vertices(count, std::vector<Rational>(dim));
    for (auto& v : vertices)
      for (auto& c : v) c = rng.in_range(Rational(-2), Rational(2), 12);
    return vertices;
  };
  ps.push_back({"extension-stays-in-hull", anchor, std::max<std::size_t>(100, n / 2), [polytope](CaseRng& rng, const Size& s) {
                  const auto vertices = polytope(rng);
                  const auto space = generate_space(rng, s.carrier);
                  const auto phi = generate_extensional(space, rng);
                  std::vector<std::vector<Rational>> f;
                  for (std::size_t a = 0; a < space.atom_count(); ++a) {
                    // A vertex, or a random convex combination of vertices.
                    const auto w = rng.chance(1, 2) ? std::vector<Rational>{} : random_simplex_point(vertices.size(), rng);
                    std::vector<Rational> point = vertices[rng.below(vertices.size())];
                    if (!w.empty()) {
                      std::fill(point.begin(), point.end(), Rational(0));
                      for (std::size_t j = 0; j < vertices.size(); ++j)
                        for (std::size_t i = 0; i < point.size(); ++i) point[i] += w[j] * vertices[j][i];
                    }
                    f.push_back(std::move(point));
                  }
                  const auto x = extend_to_convex(phi, f);
                  const auto cert = hull_certificate(vertices, x);
                  if (!cert) return CaseResult::fail(Json{{"point", rationals_json(x)}});
                  // Verify the certificate itself.
                  Rational total = 0;
                  std::vector<Rational> combo(x.size(), Rational(0));
                  for (std::size_t j = 0; j < vertices.size(); ++j) {
                    if ((*cert)[j] < 0) return CaseResult::fail(Json{{"error", "negative weight"}});
                    total += (*cert)[j];
                    for (std::size_t i = 0; i < x.size(); ++i) combo[i] += (*cert)[j] * vertices[j][i];
                  }
                  return expect(total == 1 && combo == x, Json{{"point", rationals_json(x)}});
                }});
  ps.push_back({"points-outside-rejected", anchor, std::max<std::size_t>(100, n / 2), [polytope](CaseRng& rng, const Size&) {
                  const auto vertices = polytope(rng);
                  std::vector<Rational> x = vertices[rng.below(vertices.size())];
                  const auto i = rng.below(x.size());
                  Rational top = vertices.front()[i];
                  for (const auto& v : vertices) top = std::max(top, v[i]);
                  x[i] = top + make_rational(1, 1 + static_cast<std::int64_t>(rng.below(64)));
                  return expect(!hull_membership(vertices, x), Json{{"point", rationals_json(x)}});
                }});
  return ps;
}

inline std::vector<Property> counterexample(const SuiteConfig& cfg) {
  const std::string anchor = "a finitely additive integration operator on N need not be countably additive";
  const std::size_t n = cfg.trials;
  std::vector<Property> ps;
  ps.push_back({"limit-functional-affine", anchor, n, [](CaseRng& rng, const Size&) {
                  const auto f = random_eventual_fn(rng);
                  const auto g = random_eventual_fn(rng);
                  const auto r = rng.unit();
                  return expect(limit_functional(mix(r, f, g)) == r * limit_functional(f) + (1 - r) * limit_functional(g),
                                Json{{"r", to_string(r)}});
                }, false});
  ps.push_back({"limit-functional-weakly-averaging", anchor, n, [](CaseRng& rng, const Size&) {
                  const auto r = rng.unit();
                  return expect(limit_functional(EventualFn::constant(r)) == r, Json{{"r", to_string(r)}});
                }, false});
  ps.push_back({"limit-functional-sup-continuous", anchor, n, [](CaseRng& rng, const Size&) {
                  auto v = sup_continuity_check(random_eventual_fn(rng), random_eventual_fn(rng));
                  return expect(v.passed, to_json(v));
                }, false});
  ps.push_back({"limit-functional-fails-respects-limits", anchor, 1, [](CaseRng&, const Size&) {
                  const auto v = respects_limits(limit_functional, shrinking_tails(), 256);
                  const bool pinned = !v.passed && v.witness.value("stuck_at", "") == "1/1";
                  return pinned ? CaseResult::ok(to_json(v)) : CaseResult::fail(to_json(v));
                }, false});
  ps.push_back({"singletons-null-total-one", anchor, 1, [](CaseRng&, const Size&) {
                  const auto report = countable_additivity_violation(1'000'000, 64);
                  const bool ok = report.singleton_partial_sum == 0 && report.total_mass == 1 && !report.limits.passed;
                  return ok ? CaseResult::ok(report.to_json()) : CaseResult::fail(report.to_json());
                }, false});
  ps.push_back({"measure-matches-functional", anchor, n, [](CaseRng& rng, const Size&) {
                  const auto a = random_fincof(rng);
                  return expect(cofinite_measure(a) == limit_functional(characteristic(a)), Json{{"finite", a.is_finite()}});
                }, false});
  ps.push_back({"finitely-additive", anchor, n, [](CaseRng& rng, const Size&) {
                  const auto a = random_fincof(rng);
                  auto b = random_fincof(rng);
                  if (!disjoint(a, b)) {
                    // Make b disjoint from a when possible.
                    if (!a.is_finite()) {
                      b = FinCofSet::finite({});
                      for (const auto i : a.elements())
                        if (rng.chance(1, 2)) b = set_union(b, FinCofSet::single(i));
                    } else if (b.is_finite()) {
                      std::set<std::size_t> rest;
                      for (const auto i : b.elements())
                        if (!a.contains(i)) rest.insert(i);
                      b = FinCofSet::finite(std::move(rest));
                    } else {
                      std::set<std::size_t> removed = b.elements();
                      removed.insert(a.elements().begin(), a.elements().end());
                      b = FinCofSet::cofinite(std::move(removed));
                    }
                  }
                  if (!disjoint(a, b)) return CaseResult::fail(Json{{"error", "could not build a disjoint pair"}});
                  const auto u = set_union(a, b);
                  bool members_ok = true;
                  for (std::size_t i = 0; i < 16; ++i) members_ok = members_ok && u.contains(i) == (a.contains(i) || b.contains(i));
                  return expect(members_ok && cofinite_measure(u) == cofinite_measure(a) + cofinite_measure(b),
                                Json{{"a_finite", a.is_finite()}, {"b_finite", b.is_finite()}});
                }, false});
  return ps;
}

}  // namespace suites

/// Naturality squares for one given functional, one verdict per square. The
/// first squares pair every two boundary functions (constants 0, 1 and atom
/// indicators) under a convex pair; the rest cycle through projections,
/// constants, convex pairs and unrestricted affine maps of arity <= max_arity.
inline std::vector<Verdict> naturality_stream(const Functional& phi, std::size_t trials, std::uint64_t seed, std::size_t max_arity) {
  if (trials < 1 || max_arity < 1) throw UsageError("trials and max_arity must be at least 1");
  const auto alpha = lift(phi);
  const auto& space = phi.space();
  const auto boundary = girylab::detail::boundary_functions(space);
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = CaseRng::for_case(seed, "naturality-stream", i);
    std::string kind;
    Verdict v;
    if (i < boundary.size() * boundary.size()) {
      kind = "convex-pair";
      v = check_naturality(alpha, AffineMapFin::convex_pair(make_rational(1, 2)),
                           {boundary[i / boundary.size()], boundary[i % boundary.size()]});
    } else {
      const auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_arity)));
      switch (i % 4) {
        case 0:
          kind = "projection";
          v = check_naturality(alpha, AffineMapFin::projection(k, rng.below(k)), generate_tuple(space, k, rng));
          break;
        case 1:
          kind = "constant";
          v = check_naturality(alpha, AffineMapFin::constant(k, rng.unit()), generate_tuple(space, k, rng));
          break;
        case 2:
          kind = "convex-pair";
          v = check_naturality(alpha, AffineMapFin::convex_pair(rng.unit()), generate_tuple(space, 2, rng));
          break;
        default:
          kind = "affine";
          v = check_naturality(alpha, sample_affine(k, rng), generate_tuple(space, k, rng));
      }
    }
    v.property = "naturality:" + kind;
    v.witness["case"] = i;
    v.seed = seed;
    out.push_back(std::move(v));
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"monad-laws",      "duality",      "change-of-variables", "naturality",
                                              "monoid-reduction", "convex-bound", "counterexample"};
  return names;
}

inline std::vector<Property> properties_for(const std::string& name, const SuiteConfig& cfg) {
  if (name == "monad-laws") return suites::monad_laws(cfg);
  if (name == "duality") return suites::duality(cfg);
  if (name == "change-of-variables") return suites::change_of_variables(cfg);
  if (name == "naturality") return suites::naturality(cfg);
  if (name == "monoid-reduction") return suites::monoid_reduction(cfg);
  if (name == "convex-bound") return suites::convex_bound(cfg);
  if (name == "counterexample") return suites::counterexample(cfg);
  if (name == "all") {
    std::vector<Property> all;
    for (const auto& s : suite_names())
      for (auto& p : properties_for(s, cfg)) {
        p.name = s + "/" + p.name;
        all.push_back(std::move(p));
      }
    return all;
  }
  throw UsageError("unknown suite '" + name + "'");
}

inline Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  cfg.validate();
  Report report{name, cfg, {}};
  for (const auto& p : properties_for(name, cfg)) report.records.push_back(run_property(p, cfg));
  return report;
}

}  // namespace girylab::harness
