#pragma once

// Monad structure on finite spaces: Dirac unit, multiplication of finitely
// supported measures over measures, Kleisli extension along Markov kernels.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "girylab/error.hpp"
#include "girylab/measure.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"

namespace girylab {

/// Finitely supported probability distribution over arbitrary values.
/// Weights are nonnegative and sum to exactly one; repeated values are allowed.
template <class T>
class Mixture {
 public:
  using value_type = T;
  using Entry = std::pair<T, Rational>;

  explicit Mixture(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("mixture must have nonempty support");
    Rational total = 0;
    for (const auto& [value, w] : entries_) {
      if (w < 0) throw DomainError("mixture weight " + to_string(w) + " is negative");
      total += w;
    }
    if (total != 1) throw DomainError("mixture weights sum to " + to_string(total) + ", not 1");
  }

  static Mixture point(T value) { return Mixture({{std::move(value), Rational(1)}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Push-forward of the mixture along a function on its support.
  template <class F>
  auto map(F&& fn) const -> Mixture<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    std::vector<typename Mixture<U>::Entry> out;
    out.reserve(entries_.size());
    for (const auto& [value, w] : entries_) out.emplace_back(fn(value), w);
    return Mixture<U>(std::move(out));
  }

 private:
  std::vector<Entry> entries_;
};

/// Multiplication of the finite-support distribution monad.
template <class T>
Mixture<T> flatten(const Mixture<Mixture<T>>& nested) {
  std::vector<typename Mixture<T>::Entry> out;
  for (const auto& [inner, w] : nested.entries())
    for (const auto& [value, v] : inner.entries()) out.emplace_back(value, w * v);
  return Mixture<T>(std::move(out));
}

/// Finitely supported measure on the measures over `base`.
class MetaMeasure {
 public:
  MetaMeasure(FinSpace base, Mixture<Measure> support) : base_(std::move(base)), support_(std::move(support)) {
    for (const auto& [pi, w] : support_.entries()) require_same_space(base_, pi.space(), "meta-measure component");
  }

  static MetaMeasure point(const Measure& pi) { return MetaMeasure(pi.space(), Mixture<Measure>::point(pi)); }

  const FinSpace& base() const { return base_; }
  const Mixture<Measure>& support() const { return support_; }

 private:
  FinSpace base_;
  Mixture<Measure> support_;
};

/// Dirac measure at a point.
inline Measure unit(const FinSpace& space, std::size_t point) {
  return Measure::point_mass_at_atom(space, space.atom_of(point));
}

inline Measure unit(const FinSpace& space, std::string_view label) { return unit(space, space.point_index(label)); }

/// μ(ρ)(A) = ∫ ev_A dρ, which for finite support is the weighted mixture.
inline Measure mu(const MetaMeasure& rho) {
  std::vector<Rational> w(rho.base().atom_count(), Rational(0));
  for (const auto& [pi, weight] : rho.support().entries())
    for (std::size_t a = 0; a < w.size(); ++a) w[a] += weight * pi.weight(a);
  return Measure(rho.base(), std::move(w));
}

/// Markov kernel: one measure on `cod` per atom of `dom`.
class Kernel {
 public:
  Kernel(FinSpace dom, FinSpace cod, std::vector<Measure> rows)
      : dom_(std::move(dom)), cod_(std::move(cod)), rows_(std::move(rows)) {
    if (rows_.size() != dom_.atom_count())
      throw DomainError("kernel has " + std::to_string(rows_.size()) + " rows, domain has " +
                        std::to_string(dom_.atom_count()) + " atoms");
    for (const auto& r : rows_) require_same_space(cod_, r.space(), "kernel row");
  }

  /// η as a kernel: the identity of the Kleisli category.
  static Kernel identity(const FinSpace& space) {
    std::vector<Measure> rows;
    for (std::size_t a = 0; a < space.atom_count(); ++a) rows.push_back(Measure::point_mass_at_atom(space, a));
    return Kernel(space, space, std::move(rows));
  }

  /// Deterministic kernel a ↦ δ_{g(a)}.
  static Kernel from_map(const MeasMap& g) {
    require_measurable(g);
    std::vector<Measure> rows;
    for (std::size_t a = 0; a < g.dom.atom_count(); ++a) rows.push_back(Measure::point_mass_at_atom(g.cod, g.atom_image(a)));
    return Kernel(g.dom, g.cod, std::move(rows));
  }

  const FinSpace& dom() const { return dom_; }
  const FinSpace& cod() const { return cod_; }
  const std::vector<Measure>& rows() const { return rows_; }
  const Measure& row(std::size_t atom) const { return rows_.at(atom); }
  /// Row for the atom containing a point.
  const Measure& at_point(std::size_t point) const { return rows_.at(dom_.atom_of(point)); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.rows_ == b.rows_;
  }

 private:
  FinSpace dom_;
  FinSpace cod_;
  std::vector<Measure> rows_;
};

/// Kleisli extension: bind(π, k)(A) = Σ_a π(a)·k(a)(A).
inline Measure bind(const Measure& pi, const Kernel& k) {
  require_same_space(pi.space(), k.dom(), "bind");
  std::vector<Rational> w(k.cod().atom_count(), Rational(0));
  for (std::size_t a = 0; a < pi.space().atom_count(); ++a) {
    if (pi.weight(a) == 0) continue;
    for (std::size_t b = 0; b < w.size(); ++b) w[b] += pi.weight(a) * k.row(a).weight(b);
  }
  return Measure(k.cod(), std::move(w));
}

/// first ; second
inline Kernel kleisli_compose(const Kernel& first, const Kernel& second) {
  require_same_space(first.cod(), second.dom(), "kleisli_compose");
  std::vector<Measure> rows;
  rows.reserve(first.rows().size());
  for (const auto& r : first.rows()) rows.push_back(bind(r, second));
  return Kernel(first.dom(), second.cod(), std::move(rows));
}

inline void require_endo(const Kernel& k) {
  if (!(k.dom() == k.cod())) throw DomainError("Markov chain evolution needs a kernel from a space to itself");
}

/// Distribution after n steps of the chain started at π0.
inline Measure n_step(const Kernel& k, const Measure& pi0, std::size_t n) {
  require_endo(k);
  require_same_space(k.dom(), pi0.space(), "n_step");
  Measure pi = pi0;
  for (std::size_t i = 0; i < n; ++i) pi = bind(pi, k);
  return pi;
}

/// Distributions at steps 0..n.
inline std::vector<Measure> trajectory(const Kernel& k, const Measure& pi0, std::size_t n) {
  require_endo(k);
  require_same_space(k.dom(), pi0.space(), "trajectory");
  std::vector<Measure> out{pi0};
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(bind(out.back(), k));
  return out;
}

}  // namespace girylab
