#include <iostream>

#include "girylab.hpp"

using namespace girylab;

int main() {
  // {a, b, c} with the sigma-algebra generated by {a}: atoms {a} and {b, c}.
  const auto space = FinSpace::generate({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a"}});
  std::cout << "measurable sets: " << space.sigma().size() << "\n";

  const Measure pi(space, {make_rational(1, 3), make_rational(2, 3)});
  const IFunction f(space, {Rational(1), make_rational(1, 2)});
  std::cout << "integral of f: " << to_string(integrate(f, pi)) << "\n";

  // Absorbing two-state chain, two steps from the live state.
  const auto states = FinSpace::discrete({"live", "dead"});
  const Kernel k(states, states,
                 {Measure(states, {make_rational(1, 2), make_rational(1, 2)}), Measure(states, {Rational(0), Rational(1)})});
  const auto after_two = n_step(k, unit(states, "live"), 2);
  std::cout << "after two steps: " << io::weights_json(after_two.weights()).dump() << "\n";

  // The same measure seen as an integration operator, and back.
  const auto phi = lambda_tilde(pi);
  std::cout << "phi(f) = " << to_string(phi(f)) << ", round trip ok: " << (lambda(phi) == pi) << "\n";

  // max(f) is not an integration operator.
  try {
    lambda(max_functional(space));
  } catch (const NotIntegrationOperator& e) {
    std::cout << "max rejected: " << to_json(e.verdict()).dump() << "\n";
  }

  // Naturality square for max under the convex pair x, y -> (x + y) / 2.
  const auto v = check_naturality(lift(max_functional(space)), AffineMapFin::convex_pair(make_rational(1, 2)),
                                  {atom_indicator(space, 0), atom_indicator(space, 1)});
  std::cout << "max naturality residual: " << v.witness["residual"] << "\n";

  const bool ok = integrate(f, pi) == make_rational(2, 3) && after_two.weights()[1] == make_rational(3, 4) && !v.passed;
  return ok ? 0 : 1;
}
