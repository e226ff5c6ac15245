#pragma once

// Codensity elements over categories of convex sets. An element is a family
// α_c : Meas(Ω, c) → c natural in c, and it is determined by its component
// at I: at I^n and at d0 it acts coordinatewise. This header provides the
// canonical affine maps into I, the coordinatewise lift of a functional,
// naturality checking, recovery of α_I from an action of the affine
// endomorphism monoid of d0, and exact convex-hull membership for the
// coordinatewise integral of a polytope-valued map.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "girylab/duality.hpp"
#include "girylab/error.hpp"
#include "girylab/random.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"
#include "girylab/verdict.hpp"

namespace girylab {

namespace detail {

/// a0 + Σ min(a_i, 0) >= 0 and a0 + Σ max(a_i, 0) <= 1: the extreme values
/// of the form over the cube (and the supremum over d0) lie in I.
inline void require_into_unit(const Rational& a0, const std::vector<Rational>& a, std::string_view what) {
  Rational lo = a0, hi = a0;
  for (const auto& x : a) (x < 0 ? lo : hi) += x;
  if (lo < 0 || hi > 1)
    throw DomainError(std::string(what) + " does not map into [0,1]: range is [" + to_string(lo) + ", " + to_string(hi) + "]");
}

inline void require_unit_entries(std::span<const Rational> x) {
  for (const auto& v : x)
    if (!in_unit_interval(v)) throw DomainError("coordinate " + to_string(v) + " lies outside [0,1]");
}

}  // namespace detail

/// Affine h : I^n → I, h(x) = a0 + Σ a_i x_i.
struct AffineMapFin {
  Rational a0;
  std::vector<Rational> a;

  AffineMapFin(Rational offset, std::vector<Rational> coeffs) : a0(std::move(offset)), a(std::move(coeffs)) {
    detail::require_into_unit(a0, a, "affine map on I^n");
  }

  std::size_t arity() const { return a.size(); }

  static AffineMapFin projection(std::size_t n, std::size_t i) {
    std::vector<Rational> c(n, Rational(0));
    c.at(i) = 1;
    return {Rational(0), std::move(c)};
  }
  static AffineMapFin constant(std::size_t n, const Rational& r) { return {r, std::vector<Rational>(n, Rational(0))}; }
  /// x ⊳_r y = r x + (1−r) y on I^2.
  static AffineMapFin convex_pair(const Rational& r) { return {Rational(0), {r, 1 - r}}; }

  friend bool operator==(const AffineMapFin&, const AffineMapFin&) = default;
};

/// Affine h : d0 → I with finitely many nonzero coefficients.
struct AffineMapD0 {
  Rational a0;
  std::vector<Rational> a;

  AffineMapD0(Rational offset, std::vector<Rational> coeffs) : a0(std::move(offset)), a(std::move(coeffs)) {
    detail::require_into_unit(a0, a, "affine map on d0");
  }

  friend bool operator==(const AffineMapD0&, const AffineMapD0&) = default;
};

/// Eventually-zero sequence in [0,1]; the listed entries followed by zeros.
class D0Element {
 public:
  D0Element() = default;
  explicit D0Element(std::vector<Rational> entries) : entries_(std::move(entries)) {
    detail::require_unit_entries(entries_);
    while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
  }

  /// x_i, zero past the listed entries.
  Rational operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : Rational(0); }
  const std::vector<Rational>& entries() const { return entries_; }

  friend bool operator==(const D0Element&, const D0Element&) = default;

 private:
  std::vector<Rational> entries_;
};

inline Rational apply_affine(const AffineMapFin& h, std::span<const Rational> x) {
  if (x.size() != h.arity())
    throw DomainError("affine map of arity " + std::to_string(h.arity()) + " applied to a point of I^" + std::to_string(x.size()));
  detail::require_unit_entries(x);
  Rational total = h.a0;
  for (std::size_t i = 0; i < x.size(); ++i) total += h.a[i] * x[i];
  return total;
}

inline Rational apply_affine(const AffineMapD0& h, const D0Element& x) {
  Rational total = h.a0;
  for (std::size_t i = 0; i < h.a.size(); ++i) total += h.a[i] * x[i];
  return total;
}

/// outer ∘ (inner_1, ..., inner_m) for outer : I^m → I and inner_j : I^n → I.
/// `inner_arity` fixes the arity of the result when `outer` is a constant of
/// arity 0 and there are no inner maps to read it from.
inline AffineMapFin compose(const AffineMapFin& outer, const std::vector<AffineMapFin>& inner, std::size_t inner_arity = 0) {
  if (inner.size() != outer.arity()) throw DomainError("composition needs one inner map per outer coordinate");
  const std::size_t n = inner.empty() ? inner_arity : inner.front().arity();
  Rational a0 = outer.a0;
  std::vector<Rational> a(n, Rational(0));
  for (std::size_t j = 0; j < inner.size(); ++j) {
    if (inner[j].arity() != n) throw DomainError("inner maps of a composition must share their arity");
    a0 += outer.a[j] * inner[j].a0;
    for (std::size_t i = 0; i < n; ++i) a[i] += outer.a[j] * inner[j].a[i];
  }
  return {std::move(a0), std::move(a)};
}

namespace detail {

/// Random coefficients pushed into the feasible polytope by scaling and
/// translation. Scale factor u = 1 lands on the boundary.
inline std::pair<Rational, std::vector<Rational>> sample_form(std::size_t n, CaseRng& rng) {
  std::vector<Rational> c(n);
  Rational lo = 0, hi = 0;
  for (auto& x : c) {
    x = rng.in_range(Rational(-1), Rational(1), 16);
    (x < 0 ? lo : hi) += x;
  }
  const Rational width = hi - lo;
  Rational scale = 0;
  if (width > 0) scale = rng.unit(16) / width;
  for (auto& x : c) x *= scale;
  const Rational slack = 1 - scale * width;
  const Rational a0 = -scale * lo + rng.unit(16) * slack;
  return {a0, std::move(c)};
}

}  // namespace detail

/// Valid affine map I^n → I. Projections, constants and convex pairs are
/// emitted with fixed probability so boundary cases are always exercised.
inline AffineMapFin sample_affine(std::size_t n, CaseRng& rng) {
  const auto kind = rng.below(8);
  if (n > 0 && kind == 0) return AffineMapFin::projection(n, rng.below(n));
  if (kind == 1) return AffineMapFin::constant(n, rng.unit(16));
  if (n >= 2 && kind == 2) {
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    const Rational r = rng.unit(16);
    std::vector<Rational> c(n, Rational(0));
    c[i] = r;
    c[j] = 1 - r;
    return {Rational(0), std::move(c)};
  }
  auto [a0, c] = detail::sample_form(n, rng);
  return {std::move(a0), std::move(c)};
}

inline AffineMapD0 sample_affine_d0(std::size_t listed, CaseRng& rng) {
  auto [a0, c] = detail::sample_form(listed, rng);
  return {std::move(a0), std::move(c)};
}

// -- maps into convex sets ----------------------------------------------------

/// A measurable map Ω → d0: finitely many coordinate functions followed by
/// 0̄. `zero_from` certifies where the zero tail begins.
class D0Map {
 public:
  D0Map(FinSpace space, std::vector<IFunction> entries) : space_(std::move(space)), entries_(std::move(entries)) {
    for (const auto& f : entries_) require_same_space(space_, f.space(), "d0-valued map");
    const IFunction zero = IFunction::constant(space_, 0);
    zero_from_ = entries_.size();
    while (zero_from_ > 0 && entries_[zero_from_ - 1] == zero) --zero_from_;
  }

  /// Throws when a listed entry at or past `zero_from` is not 0̄.
  D0Map(FinSpace space, std::vector<IFunction> entries, std::size_t zero_from) : D0Map(std::move(space), std::move(entries)) {
    if (zero_from < zero_from_ )
      throw DomainError("d0-valued map is not certified: entry " + std::to_string(zero_from_ - 1) +
                        " is nonzero past the claimed tail index " + std::to_string(zero_from));
    zero_from_ = zero_from;
  }

  const FinSpace& space() const { return space_; }
  const std::vector<IFunction>& entries() const { return entries_; }
  std::size_t zero_from() const { return zero_from_; }
  IFunction operator[](std::size_t i) const {
    return i < entries_.size() ? entries_[i] : IFunction::constant(space_, 0);
  }

 private:
  FinSpace space_;
  std::vector<IFunction> entries_;
  std::size_t zero_from_ = 0;
};

/// h ∘ f for f = (f_1, ..., f_n) : Ω → I^n.
inline IFunction after(const AffineMapFin& h, const std::vector<IFunction>& f) {
  if (f.size() != h.arity())
    throw DomainError("affine map of arity " + std::to_string(h.arity()) + " composed with a map into I^" + std::to_string(f.size()));
  if (f.empty()) throw DomainError("a map into I^0 carries no space; use IFunction::constant");
  const auto& space = f.front().space();
  std::vector<Rational> vals(space.atom_count(), h.a0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    require_same_space(space, f[i].space(), "map into I^n");
    for (std::size_t a = 0; a < vals.size(); ++a) vals[a] += h.a[i] * f[i].at_atom(a);
  }
  return IFunction(space, std::move(vals));
}

inline IFunction after(const AffineMapD0& h, const D0Map& f) {
  std::vector<Rational> vals(f.space().atom_count(), h.a0);
  for (std::size_t i = 0; i < h.a.size(); ++i) {
    const IFunction fi = f[i];
    for (std::size_t a = 0; a < vals.size(); ++a) vals[a] += h.a[i] * fi.at_atom(a);
  }
  return IFunction(f.space(), std::move(vals));
}

// -- codensity elements -------------------------------------------------------

/// α determined by α_I = phi and extended coordinatewise.
class CodensityElement {
 public:
  explicit CodensityElement(Functional phi) : phi_(std::move(phi)) {}

  const FinSpace& base() const { return phi_.space(); }
  const Functional& phi() const { return phi_; }

  /// α_{I^n}(f_1, ..., f_n) = (φ(f_1), ..., φ(f_n)).
  std::vector<Rational> at_power(const std::vector<IFunction>& f) const {
    std::vector<Rational> out;
    out.reserve(f.size());
    for (const auto& fi : f) out.push_back(phi_(fi));
    return out;
  }

  /// Entrywise values over the listed coordinates. The tail value φ(0̄) is
  /// not materialized; respects_d0 checks that it vanishes.
  std::vector<Rational> at_d0_entries(const D0Map& f) const {
    std::vector<Rational> out;
    for (const auto& fi : f.entries()) out.push_back(phi_(fi));
    return out;
  }

 private:
  Functional phi_;
};

inline CodensityElement lift(const Functional& phi) { return CodensityElement(phi); }

namespace detail {

inline Json functions_json(const std::vector<IFunction>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(rationals_json(f.values()));
  return out;
}

inline Verdict naturality_verdict(const CodensityElement& alpha, Json h, Json f, const Rational& path_one,
                                  const Rational& path_two) {
  Json w{{"functional", alpha.phi().label()},
         {"h", std::move(h)},
         {"f", std::move(f)},
         {"path_one", to_string(path_one)},
         {"path_two", to_string(path_two)},
         {"residual", to_string(path_one - path_two)}};
  if (path_one == path_two) return Verdict::pass("naturality", 1, 0, std::move(w));
  return Verdict::fail("naturality", std::move(w), 1);
}

}  // namespace detail

inline Json to_json(const AffineMapFin& h) { return Json{{"a0", to_string(h.a0)}, {"a", rationals_json(h.a)}}; }
inline Json to_json(const AffineMapD0& h) { return Json{{"a0", to_string(h.a0)}, {"a", rationals_json(h.a)}, {"domain", "d0"}}; }

/// Compares h(α_{I^n}(f)) (path one) with α_I(h ∘ f) (path two) exactly.
inline Verdict check_naturality(const CodensityElement& alpha, const AffineMapFin& h, const std::vector<IFunction>& f) {
  for (const auto& fi : f) require_same_space(alpha.base(), fi.space(), "naturality square");
  const auto image = alpha.at_power(f);
  const Rational path_one = apply_affine(h, image);
  const IFunction composite = f.empty() ? IFunction::constant(alpha.base(), h.a0) : after(h, f);
  const Rational path_two = alpha.phi()(composite);
  return detail::naturality_verdict(alpha, to_json(h), detail::functions_json(f), path_one, path_two);
}

inline Verdict check_naturality(const CodensityElement& alpha, const AffineMapD0& h, const D0Map& f) {
  require_same_space(alpha.base(), f.space(), "naturality square");
  Rational path_one = h.a0;
  for (std::size_t i = 0; i < h.a.size(); ++i) path_one += h.a[i] * alpha.phi()(f[i]);
  const Rational path_two = alpha.phi()(after(h, f));
  return detail::naturality_verdict(alpha, to_json(h), detail::functions_json(f.entries()), path_one, path_two);
}

/// α_{d0}(f) must again lie in d0: entries in [0,1] and a zero tail, which
/// for the coordinatewise action means φ(0̄) = 0.
inline Verdict respects_d0(const CodensityElement& alpha, const D0Map& f) {
  require_same_space(alpha.base(), f.space(), "respects_d0");
  const auto entries = alpha.at_d0_entries(f);
  const Rational tail = alpha.phi()(IFunction::constant(alpha.base(), 0));
  Json w{{"functional", alpha.phi().label()},
         {"entries", rationals_json(entries)},
         {"zero_from", f.zero_from()},
         {"tail_value", to_string(tail)}};
  for (std::size_t i = f.zero_from(); i < entries.size(); ++i)
    if (entries[i] != 0) return Verdict::fail("respects-d0", std::move(w), 1);
  if (tail != 0) return Verdict::fail("respects-d0", std::move(w), 1);
  for (const auto& e : entries)
    if (!in_unit_interval(e)) return Verdict::fail("respects-d0", std::move(w), 1);
  return Verdict::pass("respects-d0", 1, 0, std::move(w));
}

// -- monoid reduction ---------------------------------------------------------

/// An element presented only through its d0 component Meas(Ω, d0) → d0.
struct D0Action {
  FinSpace base;
  std::function<D0Element(const D0Map&)> act;
  std::string label;

  D0Element operator()(const D0Map& f) const { return act(f); }
};

/// Forgets everything but the d0 component of a lifted functional.
inline D0Action forget_to_d0(const CodensityElement& alpha) {
  return D0Action{alpha.base(),
                  [alpha](const D0Map& f) { return D0Element(alpha.at_d0_entries(f)); },
                  "lift(" + alpha.phi().label() + ")"};
}

inline D0Action entrywise_max_action(const FinSpace& space) {
  return D0Action{space,
                  [](const D0Map& f) {
                    std::vector<Rational> out;
                    for (const auto& fi : f.entries()) out.push_back(*std::max_element(fi.values().begin(), fi.values().end()));
                    return D0Element(std::move(out));
                  },
                  "entrywise-max"};
}

inline D0Action entrywise_eval_action(const FinSpace& space, std::size_t point) {
  return D0Action{space,
                  [point](const D0Map& f) {
                    std::vector<Rational> out;
                    for (const auto& fi : f.entries()) out.push_back(fi.at_point(point));
                    return D0Element(std::move(out));
                  },
                  "entrywise-eval"};
}

struct Reconstruction {
  std::optional<Functional> phi;  // present iff every generator square commutes
  std::vector<Verdict> squares;

  bool ok() const { return phi.has_value(); }
};

/// Recovers φ = π_1 ∘ α ∘ (ι_1)_* and tests α against the generators of the
/// affine endomorphism monoid of d0 that pin it down: the coordinate
/// selectors π'_i, the convex pairings ⊳'_r and the constants r'. Inputs are
/// boundary cases (0̄, 1̄, atom indicators) followed by `trials` random ones.
inline Reconstruction reconstruct_phi(const D0Action& alpha, std::size_t trials = kDefaultCheckTrials, std::uint64_t seed = 0) {
  const FinSpace& space = alpha.base;
  const auto iota1 = [&](const IFunction& f) { return D0Map(space, {f}); };
  const auto phi = [&](const IFunction& f) { return alpha(iota1(f))[0]; };
  const auto elem_json = [](const D0Element& x) { return rationals_json(x.entries()); };

  Reconstruction out;
  auto boundary = detail::boundary_functions(space);
  auto rng = CaseRng::for_case(seed, "reconstruct", 0);

  // π'_i : x ↦ (x_i, 0, ...)
  {
    Verdict v = Verdict::pass("square:projection", trials, seed);
    for (std::size_t t = 0; t < trials + 1 && v.passed; ++t) {
      std::vector<IFunction> entries;
      if (t == 0) {
        entries = boundary;
      } else {
        const auto len = rng.between(1, 4);
        for (std::int64_t i = 0; i < len; ++i) entries.push_back(random_ifunction(space, rng));
      }
      const D0Map f(space, entries);
      const D0Element whole = alpha(f);
      for (std::size_t i = 0; i <= entries.size(); ++i) {
        const D0Element lhs({whole[i]});
        const D0Element rhs = alpha(iota1(f[i]));
        if (!(lhs == rhs)) {
          v = Verdict::fail("square:projection",
                            Json{{"generator", "pi'_" + std::to_string(i + 1)},
                                 {"input", detail::functions_json(entries)},
                                 {"path_one", elem_json(lhs)},
                                 {"path_two", elem_json(rhs)}},
                            trials, seed);
          break;
        }
      }
    }
    out.squares.push_back(std::move(v));
  }

  // ⊳'_r : x ↦ (x_1 ⊳_r x_2, 0, ...)
  {
    Verdict v = Verdict::pass("square:convex-pair", trials, seed);
    auto try_pair = [&](const IFunction& f, const IFunction& g, const Rational& r) {
      const D0Element pair = alpha(D0Map(space, {f, g}));
      const D0Element lhs({r * pair[0] + (1 - r) * pair[1]});
      const D0Element rhs = alpha(iota1(mix(r, f, g)));
      if (lhs == rhs) return true;
      v = Verdict::fail("square:convex-pair",
                        Json{{"generator", "convex-pair r=" + to_string(r)},
                             {"input", detail::functions_json({f, g})},
                             {"path_one", elem_json(lhs)},
                             {"path_two", elem_json(rhs)}},
                        trials, seed);
      return false;
    };
    bool ok = true;
    for (std::size_t i = 0; ok && i < boundary.size(); ++i)
      for (std::size_t j = 0; ok && j < boundary.size(); ++j) ok = try_pair(boundary[i], boundary[j], make_rational(1, 2));
    for (std::size_t t = 0; ok && t < trials; ++t)
      ok = try_pair(random_ifunction(space, rng), random_ifunction(space, rng), rng.unit());
    out.squares.push_back(std::move(v));
  }

  // r' : x ↦ (r, 0, ...)
  {
    Verdict v = Verdict::pass("square:constant", trials, seed);
    for (std::size_t t = 0; t < trials + 2; ++t) {
      const Rational r = t == 0 ? Rational(0) : t == 1 ? Rational(1) : rng.unit();
      const D0Element lhs({r});
      const D0Element rhs = alpha(iota1(IFunction::constant(space, r)));
      if (!(lhs == rhs)) {
        v = Verdict::fail("square:constant",
                          Json{{"generator", "constant r=" + to_string(r)}, {"path_one", elem_json(lhs)}, {"path_two", elem_json(rhs)}},
                          trials, seed);
        break;
      }
    }
    out.squares.push_back(std::move(v));
  }

  if (std::all_of(out.squares.begin(), out.squares.end(), [](const Verdict& v) { return v.passed; })) {
    std::vector<Rational> coeffs;
    for (std::size_t a = 0; a < space.atom_count(); ++a) coeffs.push_back(phi(atom_indicator(space, a)));
    try {
      out.phi = Functional::extensional(space, std::move(coeffs));
    } catch (const DomainError& e) {
      out.squares.push_back(Verdict::fail("coefficient-form", Json{{"error", e.what()}}, trials, seed));
    }
  }
  return out;
}

// -- convex hulls -------------------------------------------------------------

inline constexpr std::size_t kDefaultHullDimCap = 4;

/// Convex weights λ with Σ λ_v v = x, or nothing when x is outside the hull.
/// Exact phase-one simplex with Bland's rule.
inline std::optional<std::vector<Rational>> hull_certificate(const std::vector<std::vector<Rational>>& vertices,
                                                             const std::vector<Rational>& x,
                                                             std::size_t dim_cap = kDefaultHullDimCap) {
  if (vertices.empty()) throw DomainError("hull membership needs at least one vertex");
  const std::size_t n = x.size();
  if (n > dim_cap) throw DomainError("dimension " + std::to_string(n) + " exceeds the hull cap " + std::to_string(dim_cap));
  for (const auto& v : vertices)
    if (v.size() != n) throw DomainError("vertex dimension does not match the query point");

  const std::size_t m = vertices.size();
  const std::size_t rows = n + 1;
  const std::size_t cols = m + rows;  // λ then artificials
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    Rational rhs = i < n ? x[i] : Rational(1);
    const bool flip = rhs < 0;
    for (std::size_t j = 0; j < m; ++j) {
      const Rational coeff = i < n ? vertices[j][i] : Rational(1);
      t[i][j] = flip ? Rational(-coeff) : coeff;
    }
    t[i][m + i] = 1;
    t[i][cols] = flip ? Rational(-rhs) : rhs;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = m + i;

  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rational> cost(cols + 1, Rational(0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < rows; ++i) cost[j] -= t[i][j];
  for (std::size_t i = 0; i < rows; ++i) cost[cols] -= t[i][cols];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded; cannot happen for a bounded phase one
    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    const Rational factor = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= factor * t[leave][j];
    basis[leave] = enter;
  }

  if (cost[cols] != 0) return std::nullopt;  // minimum artificial sum is -cost[cols]
  std::vector<Rational> lambda(m, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < m) lambda[basis[i]] = t[i][cols];
  return lambda;
}

inline bool hull_membership(const std::vector<std::vector<Rational>>& vertices, const std::vector<Rational>& x,
                            std::size_t dim_cap = kDefaultHullDimCap) {
  return hull_certificate(vertices, x, dim_cap).has_value();
}

/// Applies the linear extension of φ in each real coordinate of a map
/// Ω → R^n given as one point per atom.
inline std::vector<Rational> extend_to_convex(const Functional& phi, const std::vector<std::vector<Rational>>& f) {
  if (!phi.is_extensional()) throw DomainError("extend_to_convex needs a functional in coefficient form");
  const auto& c = phi.coefficients();
  if (f.size() != c.size()) throw DomainError("convex-valued map needs one point per atom");
  const std::size_t n = f.empty() ? 0 : f.front().size();
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a].size() != n) throw DomainError("convex-valued map points differ in dimension");
    for (std::size_t i = 0; i < n; ++i) out[i] += c[a] * f[a][i];
  }
  return out;
}

}  // namespace girylab
