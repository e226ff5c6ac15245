#pragma once

// Integration operators on finite spaces and their correspondence with
// measures: Λ(φ)(A) = φ(χ_A) and Λ̃(π)(f) = ∫ f dπ, plus the monad structure
// transported across that correspondence.
//
// A Functional is either extensional (a coefficient per atom, hence linear)
// or intensional (an arbitrary evaluator). Intensional functionals exist so
// that non-examples such as f ↦ max f can be fed to every check.

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "girylab/error.hpp"
#include "girylab/giry.hpp"
#include "girylab/measure.hpp"
#include "girylab/random.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"
#include "girylab/verdict.hpp"

namespace girylab {

class Functional {
 public:
  using Evaluator = std::function<Rational(const IFunction&)>;

  /// Coefficients must be nonnegative and sum to one, so evaluation stays in [0,1].
  static Functional extensional(FinSpace space, std::vector<Rational> coefficients) {
    if (coefficients.size() != space.atom_count())
      throw DomainError("functional has " + std::to_string(coefficients.size()) + " coefficients, space has " +
                        std::to_string(space.atom_count()) + " atoms");
    Rational total = 0;
    for (const auto& c : coefficients) {
      if (c < 0) throw DomainError("functional coefficient " + to_string(c) + " is negative");
      total += c;
    }
    if (total != 1) throw DomainError("functional coefficients sum to " + to_string(total) + ", not 1");
    return Functional(std::move(space), Extensional{std::move(coefficients)});
  }

  static Functional intensional(FinSpace space, Evaluator evaluator, std::string label) {
    return Functional(std::move(space), Intensional{std::make_shared<const Evaluator>(std::move(evaluator)), std::move(label)});
  }

  const FinSpace& space() const { return space_; }
  bool is_extensional() const { return std::holds_alternative<Extensional>(body_); }

  const std::vector<Rational>& coefficients() const {
    if (const auto* e = std::get_if<Extensional>(&body_)) return e->coefficients;
    throw DomainError("functional '" + label() + "' has no coefficient form");
  }

  std::string label() const {
    if (const auto* i = std::get_if<Intensional>(&body_)) return i->label;
    return "extensional";
  }

  /// φ(f). Intensional evaluators that leave [0,1] are reported as errors.
  Rational operator()(const IFunction& f) const {
    require_same_space(space_, f.space(), "functional evaluation");
    if (const auto* e = std::get_if<Extensional>(&body_)) {
      Rational total = 0;
      for (std::size_t a = 0; a < e->coefficients.size(); ++a) total += e->coefficients[a] * f.at_atom(a);
      return total;
    }
    Rational r = (*std::get<Intensional>(body_).evaluator)(f);
    if (!in_unit_interval(r))
      throw DomainError("functional '" + label() + "' produced " + to_string(r) + ", outside [0,1]");
    return r;
  }

 private:
  struct Extensional {
    std::vector<Rational> coefficients;
  };
  struct Intensional {
    std::shared_ptr<const Evaluator> evaluator;
    std::string label;
  };

  Functional(FinSpace space, std::variant<Extensional, Intensional> body)
      : space_(std::move(space)), body_(std::move(body)) {}

  FinSpace space_;
  std::variant<Extensional, Intensional> body_;
};

inline Rational eval(const Functional& phi, const IFunction& f) { return phi(f); }

// -- named functionals ------------------------------------------------------

/// f ↦ f(ω), as a coefficient vector.
inline Functional eta_S(const FinSpace& space, std::size_t point) {
  std::vector<Rational> c(space.atom_count(), Rational(0));
  c[space.atom_of(point)] = 1;
  return Functional::extensional(space, std::move(c));
}

inline Functional max_functional(const FinSpace& space) {
  return Functional::intensional(
      space, [](const IFunction& f) { return *std::max_element(f.values().begin(), f.values().end()); }, "max");
}

/// f ↦ f(ω)²
inline Functional square_functional(const FinSpace& space, std::size_t point) {
  return Functional::intensional(
      space, [point](const IFunction& f) { return f.at_point(point) * f.at_point(point); }, "square");
}

/// f ↦ min(1, Σ_atoms f)
inline Functional clamped_sum_functional(const FinSpace& space) {
  return Functional::intensional(
      space,
      [](const IFunction& f) {
        Rational s = 0;
        for (const auto& v : f.values()) s += v;
        return std::min(s, Rational(1));
      },
      "clamped-sum");
}

// -- canonical affine form ----------------------------------------------------

/// φ read as a0 + Σ a_i f(atom_i), derived from φ(0̄) and φ(χ_atom).
struct CanonicalForm {
  Rational a0;
  std::vector<Rational> a;

  /// The form of an affine, weakly averaging functional: a0 = 0, a_i >= 0, Σ a_i = 1.
  bool is_integration_operator() const {
    Rational total = 0;
    for (const auto& x : a) {
      if (x < 0) return false;
      total += x;
    }
    return a0 == 0 && total == 1;
  }

  Rational operator()(const IFunction& f) const {
    Rational total = a0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * f.at_atom(i);
    return total;
  }
};

inline CanonicalForm canonical_form(const Functional& phi) {
  const auto& space = phi.space();
  CanonicalForm cf{phi(IFunction::constant(space, 0)), {}};
  for (std::size_t a = 0; a < space.atom_count(); ++a) cf.a.push_back(phi(atom_indicator(space, a)) - cf.a0);
  return cf;
}

// -- property checks ----------------------------------------------------------

namespace detail {

inline Json function_json(const IFunction& f) { return rationals_json(f.values()); }

/// Boundary candidates tried before random search: 0̄, 1̄ and atom indicators.
inline std::vector<IFunction> boundary_functions(const FinSpace& space) {
  std::vector<IFunction> out{IFunction::constant(space, 0), IFunction::constant(space, 1)};
  for (std::size_t a = 0; a < space.atom_count(); ++a) out.push_back(atom_indicator(space, a));
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultCheckTrials = 64;

/// φ(r f + (1−r) g) = r φ(f) + (1−r) φ(g). Exact for extensional functionals,
/// randomized (boundary pairs first) for intensional ones.
inline Verdict is_affine(const Functional& phi, std::size_t trials = kDefaultCheckTrials, std::uint64_t seed = 0) {
  if (phi.is_extensional()) return Verdict::pass("affine", 0, seed, Json{{"exact", "linear form"}});
  const auto& space = phi.space();
  auto check = [&](const IFunction& f, const IFunction& g, const Rational& r) -> std::optional<Verdict> {
    const Rational lhs = phi(mix(r, f, g));
    const Rational rhs = r * phi(f) + (1 - r) * phi(g);
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail("affine",
                         Json{{"functional", phi.label()},
                              {"f", detail::function_json(f)},
                              {"g", detail::function_json(g)},
                              {"r", to_string(r)},
                              {"lhs", to_string(lhs)},
                              {"rhs", to_string(rhs)}},
                         trials, seed);
  };
  const auto boundary = detail::boundary_functions(space);
  for (const auto& f : boundary)
    for (const auto& g : boundary)
      if (auto v = check(f, g, make_rational(1, 2))) return *v;
  auto rng = CaseRng::for_case(seed, "affine", 0);
  for (std::size_t t = 0; t < trials; ++t) {
    if (auto v = check(random_ifunction(space, rng), random_ifunction(space, rng), rng.unit())) return *v;
  }
  return Verdict::pass("affine", trials, seed);
}

/// φ(r̄) = r.
inline Verdict is_weakly_averaging(const Functional& phi, std::size_t trials = kDefaultCheckTrials, std::uint64_t seed = 0) {
  if (phi.is_extensional()) return Verdict::pass("weakly-averaging", 0, seed, Json{{"exact", "coefficients sum to 1"}});
  auto rng = CaseRng::for_case(seed, "weakly-averaging", 0);
  for (std::size_t t = 0; t < trials + 2; ++t) {
    const Rational r = t == 0 ? Rational(0) : t == 1 ? Rational(1) : rng.unit();
    const Rational got = phi(IFunction::constant(phi.space(), r));
    if (got != r)
      return Verdict::fail("weakly-averaging", Json{{"functional", phi.label()}, {"r", to_string(r)}, {"value", to_string(got)}},
                           trials, seed);
  }
  return Verdict::pass("weakly-averaging", trials, seed);
}

/// Consequences every affine weakly averaging functional has: homogeneity
/// φ(rf) = rφ(f), additivity φ(f+f') = φ(f)+φ(f') when f+f' stays in I, and
/// monotonicity.
inline Verdict integration_operator_properties(const Functional& phi, std::size_t trials = kDefaultCheckTrials,
                                               std::uint64_t seed = 0) {
  const auto& space = phi.space();
  const std::string name = "homogeneous-additive-monotone";
  auto rng = CaseRng::for_case(seed, name, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const IFunction f = random_ifunction(space, rng);
    const Rational r = rng.unit();
    const IFunction zero = IFunction::constant(space, 0);
    const IFunction scaled = mix(r, f, zero);
    if (phi(scaled) != r * phi(f))
      return Verdict::fail(name, Json{{"check", "homogeneity"}, {"functional", phi.label()}, {"f", detail::function_json(f)}, {"r", to_string(r)}},
                           trials, seed);
    // f' := s·(1 − f) keeps f + f' inside I.
    std::vector<Rational> rest(space.atom_count());
    const Rational s = rng.unit();
    for (std::size_t a = 0; a < rest.size(); ++a) rest[a] = s * (1 - f.at_atom(a));
    const IFunction f2(space, rest);
    std::vector<Rational> sum(space.atom_count());
    for (std::size_t a = 0; a < sum.size(); ++a) sum[a] = f.at_atom(a) + f2.at_atom(a);
    const IFunction total(space, std::move(sum));
    if (phi(total) != phi(f) + phi(f2))
      return Verdict::fail(name, Json{{"check", "additivity"}, {"functional", phi.label()}, {"f", detail::function_json(f)}, {"f2", detail::function_json(f2)}},
                           trials, seed);
    if (phi(f) > phi(total))
      return Verdict::fail(name, Json{{"check", "monotonicity"}, {"functional", phi.label()}, {"f", detail::function_json(f)}, {"larger", detail::function_json(total)}},
                           trials, seed);
  }
  return Verdict::pass(name, trials, seed);
}

/// Thrown by lambda() when the functional is not an integration operator.
class NotIntegrationOperator : public DomainError {
 public:
  explicit NotIntegrationOperator(Verdict v)
      : DomainError("functional is not affine and weakly averaging: " + to_json(v).dump()), verdict_(std::move(v)) {}
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

/// Λ(φ)(A) = φ(χ_A). Intensional inputs are screened on the atom basis
/// (φ(0̄) = 0, Σ φ(χ_atom) = 1) and then by randomized affineness.
inline Measure lambda(const Functional& phi, std::size_t trials = kDefaultCheckTrials, std::uint64_t seed = 0) {
  const auto& space = phi.space();
  if (phi.is_extensional()) return Measure(space, phi.coefficients());
  const Rational at_zero = phi(IFunction::constant(space, 0));
  if (at_zero != 0)
    throw NotIntegrationOperator(Verdict::fail("lambda", Json{{"check", "zero"}, {"functional", phi.label()}, {"value", to_string(at_zero)}}));
  std::vector<Rational> weights(space.atom_count());
  Rational total = 0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    weights[a] = phi(atom_indicator(space, a));
    total += weights[a];
  }
  if (total != 1) {
    Json indicators = Json::array();
    for (std::size_t a = 0; a < weights.size(); ++a) indicators.push_back(detail::function_json(atom_indicator(space, a)));
    throw NotIntegrationOperator(Verdict::fail("lambda", Json{{"check", "additivity"},
                                                              {"functional", phi.label()},
                                                              {"indicators", indicators},
                                                              {"values", rationals_json(weights)},
                                                              {"sum", to_string(total)}}));
  }
  if (auto v = is_affine(phi, trials, seed); !v.passed) throw NotIntegrationOperator(std::move(v));
  return Measure(space, std::move(weights));
}

/// Λ̃(π)(f) = ∫ f dπ.
inline Functional lambda_tilde(const Measure& pi) { return Functional::extensional(pi.space(), pi.weights()); }

/// Sg(φ)(f) = φ(f ∘ g).
inline Functional S_map(const MeasMap& g, const Functional& phi) {
  require_same_space(g.dom, phi.space(), "S_map");
  require_measurable(g);
  if (phi.is_extensional()) {
    std::vector<Rational> c(g.cod.atom_count(), Rational(0));
    for (std::size_t a = 0; a < g.dom.atom_count(); ++a) c[g.atom_image(a)] += phi.coefficients()[a];
    return Functional::extensional(g.cod, std::move(c));
  }
  return Functional::intensional(
      g.cod, [g, phi](const IFunction& f) { return phi(precompose(f, g)); }, phi.label() + "∘g");
}

/// Finite mixture of functionals on one space, the analogue of MetaMeasure.
class FunctionalMixture {
 public:
  FunctionalMixture(FinSpace base, Mixture<Functional> support) : base_(std::move(base)), support_(std::move(support)) {
    for (const auto& [phi, w] : support_.entries()) require_same_space(base_, phi.space(), "functional mixture component");
  }
  const FinSpace& base() const { return base_; }
  const Mixture<Functional>& support() const { return support_; }

 private:
  FinSpace base_;
  Mixture<Functional> support_;
};

/// μ_S(ψ)(f) = ψ(ev_f) = Σ w_i φ_i(f).
inline Functional mu_S(const FunctionalMixture& psi) {
  const auto& entries = psi.support().entries();
  const bool all_ext = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.first.is_extensional(); });
  if (all_ext) {
    std::vector<Rational> c(psi.base().atom_count(), Rational(0));
    for (const auto& [phi, w] : entries)
      for (std::size_t a = 0; a < c.size(); ++a) c[a] += w * phi.coefficients()[a];
    return Functional::extensional(psi.base(), std::move(c));
  }
  return Functional::intensional(
      psi.base(),
      [entries](const IFunction& f) {
        Rational total = 0;
        for (const auto& [phi, w] : entries) total += w * phi(f);
        return total;
      },
      "mixture");
}

/// Λ applied to every component of ψ.
inline MetaMeasure lambda_image(const FunctionalMixture& psi) {
  return MetaMeasure(psi.base(), psi.support().map([](const Functional& phi) { return lambda(phi); }));
}

// -- limits -------------------------------------------------------------------

/// A sequence f_0, f_1, ... on a finite space: the listed terms followed by
/// 0̄ forever, with a per-atom index from which the values are zero.
struct LimitWitness {
  std::vector<IFunction> terms;
  std::vector<std::size_t> zero_from;
};

/// Checks that a witness's certificate matches its terms.
inline void require_certified(const LimitWitness& w, const FinSpace& space) {
  if (w.zero_from.size() != space.atom_count()) throw DomainError("limit witness needs one certificate index per atom");
  for (const auto& f : w.terms) require_same_space(space, f.space(), "limit witness term");
  for (std::size_t a = 0; a < space.atom_count(); ++a)
    for (std::size_t n = w.zero_from[a]; n < w.terms.size(); ++n)
      if (w.terms[n].at_atom(a) != 0)
        throw DomainError("limit witness is not certified: term " + std::to_string(n) + " is nonzero on atom " +
                          std::to_string(a) + " past its certificate index");
}

/// φ(f_n) → 0 along a certified sequence. Past the last listed term every f_n
/// is 0̄, so the sequence of values is eventually φ(0̄): the verdict passes iff
/// that value is 0, and a failure reports it as the stuck lower bound.
inline Verdict respects_limits(const Functional& phi, const LimitWitness& w) {
  require_certified(w, phi.space());
  std::vector<Rational> values;
  for (const auto& f : w.terms) values.push_back(phi(f));
  const Rational tail = phi(IFunction::constant(phi.space(), 0));
  Json witness{{"values", rationals_json(values)}, {"tail_index", w.terms.size()}, {"tail_value", to_string(tail)}};
  if (tail == 0) return Verdict::pass("respects-limits", w.terms.size(), 0, std::move(witness));
  witness["stuck_at"] = to_string(tail);
  return Verdict::fail("respects-limits", std::move(witness), w.terms.size());
}

}  // namespace girylab
