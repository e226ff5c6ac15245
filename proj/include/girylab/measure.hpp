#pragma once

// Probability measures on finite spaces, plus a small computable class of
// measures on the unit interval (finite mixtures of point masses and uniform
// pieces) with exact step-function integration and a certified approximation
// scheme for uniformly continuous integrands.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "girylab/error.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"

namespace girylab {

/// Finitely additive probability measure on a finite space, one weight per
/// atom. Additivity is structural; normalization is checked on construction.
class Measure {
 public:
  Measure(FinSpace space, std::vector<Rational> weights) : space_(std::move(space)), weights_(std::move(weights)) {
    if (weights_.size() != space_.atom_count())
      throw DomainError("measure has " + std::to_string(weights_.size()) + " weights, space has " +
                        std::to_string(space_.atom_count()) + " atoms");
    Rational total = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw DomainError("measure weight " + to_string(w) + " is negative");
      total += w;
    }
    if (total != 1) throw DomainError("measure weights sum to " + to_string(total) + ", not 1");
  }

  static Measure uniform(const FinSpace& space) {
    const auto k = static_cast<std::int64_t>(space.atom_count());
    return Measure(space, std::vector<Rational>(space.atom_count(), make_rational(1, k)));
  }

  static Measure point_mass_at_atom(const FinSpace& space, std::size_t atom) {
    std::vector<Rational> w(space.atom_count(), Rational(0));
    w.at(atom) = 1;
    return Measure(space, std::move(w));
  }

  const FinSpace& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_.at(atom); }

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.space_ == b.space_ && a.weights_ == b.weights_;
  }

 private:
  FinSpace space_;
  std::vector<Rational> weights_;
};

inline Rational measure_of(const Measure& pi, PointSet a) {
  Rational total = 0;
  for (const auto atom : pi.space().atoms_in(a)) total += pi.weight(atom);
  return total;
}

/// Image measure along a measurable map: (g_* π)(A') = π(g⁻¹A').
inline Measure pushforward(const MeasMap& g, const Measure& pi) {
  require_same_space(g.dom, pi.space(), "pushforward");
  require_measurable(g);
  std::vector<Rational> w(g.cod.atom_count(), Rational(0));
  for (std::size_t a = 0; a < pi.space().atom_count(); ++a) w[g.atom_image(a)] += pi.weight(a);
  return Measure(g.cod, std::move(w));
}

inline Rational integrate(const IFunction& f, const Measure& pi) {
  require_same_space(f.space(), pi.space(), "integrate");
  Rational total = 0;
  for (std::size_t a = 0; a < pi.space().atom_count(); ++a) total += f.at_atom(a) * pi.weight(a);
  return total;
}

/// ∫ f∘g dπ == ∫ f d(g_* π), compared exactly.
inline bool change_of_variables_check(const MeasMap& g, const Measure& pi, const IFunction& f) {
  require_same_space(g.dom, pi.space(), "change of variables (measure)");
  require_same_space(g.cod, f.space(), "change of variables (function)");
  return integrate(precompose(f, g), pi) == integrate(f, pushforward(g, pi));
}

// ---------------------------------------------------------------------------
// The unit interval

struct PointMass {
  Rational location;
  Rational mass;
};

struct UniformPiece {
  Rational lo;
  Rational hi;
  Rational mass;
};

/// Finite mixture of point masses and uniform distributions on subintervals
/// of [0,1]. Pieces may overlap.
class IntervalMeasure {
 public:
  IntervalMeasure(std::vector<PointMass> points, std::vector<UniformPiece> pieces)
      : points_(std::move(points)), pieces_(std::move(pieces)) {
    Rational total = 0;
    for (const auto& p : points_) {
      if (!in_unit_interval(p.location)) throw DomainError("point mass location outside [0,1]");
      if (p.mass < 0) throw DomainError("negative point mass");
      total += p.mass;
    }
    for (const auto& u : pieces_) {
      if (!(0 <= u.lo && u.lo < u.hi && u.hi <= 1)) throw DomainError("uniform piece must satisfy 0 <= a < b <= 1");
      if (u.mass < 0) throw DomainError("negative uniform piece mass");
      total += u.mass;
    }
    if (total != 1) throw DomainError("interval measure has total mass " + to_string(total) + ", not 1");
  }

  static IntervalMeasure lebesgue() { return IntervalMeasure({}, {{Rational(0), Rational(1), Rational(1)}}); }
  static IntervalMeasure dirac(const Rational& x) { return IntervalMeasure({{x, Rational(1)}}, {}); }

  const std::vector<PointMass>& points() const { return points_; }
  const std::vector<UniformPiece>& pieces() const { return pieces_; }

 private:
  std::vector<PointMass> points_;
  std::vector<UniformPiece> pieces_;
};

/// Simple function on [0,1]: constant on each [t_i, t_{i+1}), plus a value at 1.
class StepFunction {
 public:
  StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational value_at_one)
      : breaks_(std::move(breakpoints)), values_(std::move(values)), at_one_(std::move(value_at_one)) {
    if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1)
      throw DomainError("step function breakpoints must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
      if (!(breaks_[i] < breaks_[i + 1])) throw DomainError("step function breakpoints must strictly increase");
    if (values_.size() + 1 != breaks_.size()) throw DomainError("step function needs one value per piece");
    for (const auto& v : values_)
      if (!in_unit_interval(v)) throw DomainError("step function value outside [0,1]");
    if (!in_unit_interval(at_one_)) throw DomainError("step function value at 1 outside [0,1]");
  }

  /// Indicator of [0, t) for 0 < t <= 1.
  static StepFunction indicator_below(const Rational& t) {
    if (t == 1) return StepFunction({Rational(0), Rational(1)}, {Rational(1)}, Rational(0));
    return StepFunction({Rational(0), t, Rational(1)}, {Rational(1), Rational(0)}, Rational(0));
  }

  Rational operator()(const Rational& x) const {
    if (!in_unit_interval(x)) throw DomainError("step function evaluated outside [0,1]");
    if (x == 1) return at_one_;
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  /// Exact ∫_lo^hi s(x) dx.
  Rational integral_over(const Rational& lo, const Rational& hi) const {
    Rational total = 0;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), lo);
    for (auto i = static_cast<std::size_t>(it - breaks_.begin()) - 1; i < values_.size(); ++i) {
      if (breaks_[i] >= hi) break;
      const Rational left = std::max(lo, breaks_[i]);
      const Rational right = std::min(hi, breaks_[i + 1]);
      if (right > left) total += (right - left) * values_[i];
    }
    return total;
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value_at_one() const { return at_one_; }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
  Rational at_one_;
};

inline Rational integrate_step(const StepFunction& s, const IntervalMeasure& m) {
  Rational total = 0;
  for (const auto& p : m.points()) total += p.mass * s(p.location);
  for (const auto& u : m.pieces()) total += u.mass * s.integral_over(u.lo, u.hi) / (u.hi - u.lo);
  return total;
}

using UnitFunction = std::function<Rational(const Rational&)>;
/// ε ↦ δ such that |x − y| ≤ δ implies |f(x) − f(y)| ≤ ε.
using Modulus = std::function<Rational(const Rational&)>;

struct ApproxBracket {
  Rational lower;  // integral of the minorant staircase; the returned estimate
  Rational upper;  // integral of the matching majorant staircase
  unsigned level;  // dyadic grid has 2^level cells
  StepFunction minorant;
};

inline constexpr unsigned kMaxDyadicLevel = 24;

/// Builds a minorant staircase of f on the dyadic grid of mesh ≤ δ(ε/2),
/// sampled at left endpoints and lowered by ε/2 (by 0 when δ(0) covers a
/// cell), and its majorant twin.
/// When `previous` is given (an earlier rung of the same ladder) the new
/// minorant is the pointwise max with it, so the estimates never decrease.
inline ApproxBracket approx_bracket(const UnitFunction& f, const Modulus& modulus, const Rational& eps,
                                    const IntervalMeasure& m, const ApproxBracket* previous = nullptr) {
  if (eps <= 0) throw DomainError("approximation tolerance must be positive");
  const Rational delta = modulus(eps / 2);
  if (delta <= 0) throw DomainError("modulus of continuity returned a nonpositive delta");
  unsigned level = 0;
  while (dyadic(level) > delta) {
    if (++level > kMaxDyadicLevel) throw DomainError("required grid is finer than 2^-24");
  }
  if (previous != nullptr) level = std::max(level, previous->level);

  const auto eval = [&](const Rational& x) {
    Rational y = f(x);
    if (!in_unit_interval(y)) throw DomainError("integrand left [0,1] at x = " + to_string(x));
    return y;
  };

  const std::size_t cells = std::size_t{1} << level;
  const Rational mesh = dyadic(level);
  // δ(0) ≥ mesh certifies f is constant on every cell, so no slack is needed.
  const Rational delta0 = modulus(Rational(0));
  const Rational half = (delta0 > 0 && mesh <= delta0) ? Rational(0) : eps / 2;
  std::vector<Rational> breaks(cells + 1);
  std::vector<Rational> low(cells), high(cells);
  for (std::size_t i = 0; i <= cells; ++i) breaks[i] = mesh * static_cast<long long>(i);
  for (std::size_t i = 0; i < cells; ++i) {
    const Rational y = eval(breaks[i]);
    low[i] = clamp_unit(y - half);
    high[i] = clamp_unit(y + half);
    if (previous != nullptr) low[i] = std::max(low[i], previous->minorant(breaks[i]));
  }
  const Rational y1 = eval(Rational(1));
  StepFunction minorant(breaks, std::move(low), y1);
  StepFunction majorant(std::move(breaks), std::move(high), y1);
  const Rational lower = integrate_step(minorant, m);
  const Rational upper = integrate_step(majorant, m);
  return ApproxBracket{lower, upper, level, std::move(minorant)};
}

/// Returns r with |r − ∫ f dm| ≤ ε.
inline Rational integrate_approx(const UnitFunction& f, const Modulus& modulus, const Rational& eps,
                                 const IntervalMeasure& m) {
  return approx_bracket(f, modulus, eps, m).lower;
}

/// Successive refinements for a decreasing list of tolerances; each rung
/// reuses the previous minorant, so the lower estimates are nondecreasing.
inline std::vector<ApproxBracket> approx_ladder(const UnitFunction& f, const Modulus& modulus,
                                                const std::vector<Rational>& tolerances, const IntervalMeasure& m) {
  std::vector<ApproxBracket> rungs;
  rungs.reserve(tolerances.size());
  for (const auto& eps : tolerances) rungs.push_back(approx_bracket(f, modulus, eps, m, rungs.empty() ? nullptr : &rungs.back()));
  return rungs;
}

}  // namespace girylab
