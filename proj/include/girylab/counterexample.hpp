#pragma once

// A finitely additive integration operator on N that is not countably
// additive, restricted to a computable class.
//
// Functions N → I are eventually constant (a finite prefix and a tail value)
// and sets are finite or cofinite. On this class "take the limit at
// infinity" is affine, weakly averaging and 1-Lipschitz in the sup metric,
// and its measure gives every finite set mass 0 and N mass 1. It stands in
// for a non-principal ultrafilter, which cannot be constructed.
//
// The finite/cofinite sets form an algebra, not a sigma-algebra: a
// countable union of singletons can leave the class. The failure of
// countable additivity is exhibited through partial sums of singleton masses
// and through the functional's failure to respect limits.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "girylab/error.hpp"
#include "girylab/random.hpp"
#include "girylab/rational.hpp"
#include "girylab/verdict.hpp"

namespace girylab {

/// f : N → I equal to prefix[n] for n < |prefix| and to `tail` afterwards.
class EventualFn {
 public:
  EventualFn(std::vector<Rational> prefix, Rational tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (const auto& v : prefix_)
      if (!in_unit_interval(v)) throw DomainError("eventually constant function takes value " + to_string(v) + " outside [0,1]");
    if (!in_unit_interval(tail_)) throw DomainError("tail value " + to_string(tail_) + " outside [0,1]");
  }

  static EventualFn constant(const Rational& r) { return EventualFn({}, r); }

  /// χ_{[n, ∞)}
  static EventualFn indicator_from(std::size_t n) { return EventualFn(std::vector<Rational>(n, Rational(0)), Rational(1)); }

  Rational operator()(std::size_t n) const { return n < prefix_.size() ? prefix_[n] : tail_; }
  const std::vector<Rational>& prefix() const { return prefix_; }
  const Rational& tail() const { return tail_; }

 private:
  std::vector<Rational> prefix_;
  Rational tail_;
};

/// r·f + (1−r)·g
inline EventualFn mix(const Rational& r, const EventualFn& f, const EventualFn& g) {
  if (!in_unit_interval(r)) throw DomainError("mixing weight outside [0,1]");
  const std::size_t n = std::max(f.prefix().size(), g.prefix().size());
  std::vector<Rational> prefix(n);
  for (std::size_t i = 0; i < n; ++i) prefix[i] = r * f(i) + (1 - r) * g(i);
  return EventualFn(std::move(prefix), r * f.tail() + (1 - r) * g.tail());
}

/// sup_n |f(n) − g(n)|, attained on the prefixes or the tails.
inline Rational sup_distance(const EventualFn& f, const EventualFn& g) {
  Rational d = abs(f.tail() - g.tail());
  const std::size_t n = std::max(f.prefix().size(), g.prefix().size());
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, abs(f(i) - g(i)));
  return d;
}

/// A finite subset of N, or the complement of one.
class FinCofSet {
 public:
  enum class Kind { finite, cofinite };

  FinCofSet(Kind kind, std::set<std::size_t> elements) : kind_(kind), elements_(std::move(elements)) {}

  static FinCofSet finite(std::set<std::size_t> s) { return {Kind::finite, std::move(s)}; }
  /// N \ s
  static FinCofSet cofinite(std::set<std::size_t> s) { return {Kind::cofinite, std::move(s)}; }
  static FinCofSet naturals() { return cofinite({}); }
  static FinCofSet single(std::size_t n) { return finite({n}); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  /// The set itself when finite, its complement when cofinite.
  const std::set<std::size_t>& elements() const { return elements_; }

  bool contains(std::size_t n) const { return is_finite() == (elements_.count(n) > 0); }

  friend bool operator==(const FinCofSet&, const FinCofSet&) = default;

 private:
  Kind kind_;
  std::set<std::size_t> elements_;
};

inline bool disjoint(const FinCofSet& a, const FinCofSet& b) {
  if (!a.is_finite() && !b.is_finite()) return false;  // two cofinite sets always meet
  if (a.is_finite() && b.is_finite())
    return std::none_of(a.elements().begin(), a.elements().end(), [&](std::size_t n) { return b.contains(n); });
  const FinCofSet& fin = a.is_finite() ? a : b;
  const FinCofSet& cof = a.is_finite() ? b : a;
  return std::none_of(fin.elements().begin(), fin.elements().end(), [&](std::size_t n) { return cof.contains(n); });
}

inline FinCofSet set_union(const FinCofSet& a, const FinCofSet& b) {
  std::set<std::size_t> out;
  if (a.is_finite() && b.is_finite()) {
    std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(), std::inserter(out, out.end()));
    return FinCofSet::finite(std::move(out));
  }
  if (!a.is_finite() && !b.is_finite()) {
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::inserter(out, out.end()));
    return FinCofSet::cofinite(std::move(out));
  }
  const FinCofSet& fin = a.is_finite() ? a : b;
  const FinCofSet& cof = a.is_finite() ? b : a;
  std::set_difference(cof.elements().begin(), cof.elements().end(), fin.elements().begin(), fin.elements().end(),
                      std::inserter(out, out.end()));
  return FinCofSet::cofinite(std::move(out));
}

inline EventualFn characteristic(const FinCofSet& a) {
  const std::size_t n = a.elements().empty() ? 0 : *a.elements().rbegin() + 1;
  std::vector<Rational> prefix(n);
  for (std::size_t i = 0; i < n; ++i) prefix[i] = a.contains(i) ? 1 : 0;
  return EventualFn(std::move(prefix), a.is_finite() ? Rational(0) : Rational(1));
}

/// φ(f) = lim_{n→∞} f(n).
inline Rational limit_functional(const EventualFn& f) { return f.tail(); }

/// 0 on finite sets, 1 on cofinite ones.
inline Rational cofinite_measure(const FinCofSet& a) { return a.is_finite() ? Rational(0) : Rational(1); }

/// |φ(f) − φ(g)| ≤ sup |f − g|.
inline Verdict sup_continuity_check(const EventualFn& f, const EventualFn& g) {
  const Rational eps = sup_distance(f, g);
  const Rational gap = abs(limit_functional(f) - limit_functional(g));
  Json w{{"epsilon", to_string(eps)}, {"gap", to_string(gap)}};
  if (gap <= eps) return Verdict::pass("sup-continuity", 1, 0, std::move(w));
  return Verdict::fail("sup-continuity", std::move(w), 1);
}

/// Sequence f_0, f_1, ... of functions N → I with a pointwise certificate:
/// f_n(point) = 0 for every n >= zero_from(point).
struct NatLimitWitness {
  std::function<EventualFn(std::size_t)> term;
  std::function<std::size_t(std::size_t)> zero_from;
  std::string label;
};

inline NatLimitWitness shrinking_tails() {
  return NatLimitWitness{[](std::size_t n) { return EventualFn::indicator_from(n); },
                         [](std::size_t point) { return point + 1; },
                         "indicator of [n, inf)"};
}

/// Checks φ(f_n) → 0 along a witness, looking at terms up to `horizon` and
/// thresholds 2^-k for k < `thresholds`. The certificate is verified on
/// points below the horizon. A failure reports the infimum of the observed
/// values as the bound the sequence is stuck above.
inline Verdict respects_limits(const std::function<Rational(const EventualFn&)>& phi, const NatLimitWitness& w,
                               std::size_t horizon = 64, unsigned thresholds = 32) {
  std::vector<std::size_t> zero_from(horizon);
  for (std::size_t point = 0; point < horizon; ++point) zero_from[point] = w.zero_from(point);
  std::vector<Rational> values;
  for (std::size_t n = 0; n <= horizon; ++n) {
    const EventualFn term = w.term(n);
    for (std::size_t point = 0; point < horizon; ++point)
      if (zero_from[point] <= n && term(point) != 0)
        throw DomainError("limit witness is not certified: term " + std::to_string(n) + " is nonzero at " + std::to_string(point));
    values.push_back(phi(term));
  }
  const Rational lowest = *std::min_element(values.begin(), values.end());
  Json witness{{"sequence", w.label}, {"horizon", horizon}, {"values", rationals_json(values)}};
  if (lowest < dyadic(thresholds - 1)) return Verdict::pass("respects-limits", horizon + 1, 0, std::move(witness));
  witness["stuck_at"] = to_string(lowest);
  return Verdict::fail("respects-limits", std::move(witness), horizon + 1);
}

struct AdditivityViolation {
  std::size_t partial_sum_terms;
  Rational singleton_partial_sum;  // Σ_{i<N} μ({i})
  Rational total_mass;             // μ(N)
  Verdict limits;                  // respects-limits refutation along χ_{[n,∞)}

  Json to_json() const {
    return Json{{"partial_sum_terms", partial_sum_terms},
                {"singleton_partial_sum", to_string(singleton_partial_sum)},
                {"singleton_sum_limit", to_string(singleton_partial_sum)},
                {"total_mass", to_string(total_mass)},
                {"respects_limits", girylab::to_json(limits)}};
  }
};

/// Every singleton has mass 0, so every partial sum (and hence the series)
/// is 0, while N has mass 1.
inline AdditivityViolation countable_additivity_violation(std::size_t terms = 1'000'000, std::size_t horizon = 64) {
  Rational partial = 0;
  for (std::size_t i = 0; i < terms; ++i) partial += cofinite_measure(FinCofSet::single(i));
  return AdditivityViolation{terms, partial, cofinite_measure(FinCofSet::naturals()),
                             respects_limits(limit_functional, shrinking_tails(), horizon)};
}

inline EventualFn random_eventual_fn(CaseRng& rng, std::size_t max_prefix = 8) {
  std::vector<Rational> prefix(rng.below(max_prefix + 1));
  for (auto& v : prefix) v = rng.unit();
  return EventualFn(std::move(prefix), rng.unit());
}

inline FinCofSet random_fincof(CaseRng& rng, std::size_t max_index = 12) {
  std::set<std::size_t> s;
  const auto k = rng.below(5);
  for (std::uint64_t i = 0; i < k; ++i) s.insert(rng.below(max_index));
  return rng.chance(1, 2) ? FinCofSet::finite(std::move(s)) : FinCofSet::cofinite(std::move(s));
}

}  // namespace girylab
