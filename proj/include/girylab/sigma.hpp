#pragma once

// Finite measurable spaces. A sigma-algebra on at most 64 points is stored
// extensionally as a sorted list of bitmasks, together with its atom
// partition. Everything downstream (measures, I-valued functions, kernels)
// is indexed by atoms.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "girylab/error.hpp"
#include "girylab/rational.hpp"

namespace girylab {

/// Subset of a carrier, bit i set iff point i is a member.
using PointSet = std::uint64_t;

inline constexpr std::size_t kHardCarrierLimit = 64;
inline constexpr std::size_t kDefaultCarrierCap = 16;

inline PointSet full_set(std::size_t n) { return n == 64 ? ~PointSet{0} : ((PointSet{1} << n) - 1); }
inline PointSet singleton(std::size_t i) { return PointSet{1} << i; }
inline bool subset_of(PointSet a, PointSet b) { return (a & ~b) == 0; }

class FinSpace {
 public:
  /// Smallest sigma-algebra on `carrier` containing `generators`.
  /// Throws DomainError when a generator escapes the carrier, labels repeat,
  /// or the carrier exceeds `cap` points.
  static FinSpace generate(std::vector<std::string> carrier, std::span<const PointSet> generators,
                           std::size_t cap = kDefaultCarrierCap) {
    const std::size_t n = carrier.size();
    if (n == 0) throw DomainError("carrier must be nonempty");
    if (n > cap || n > kHardCarrierLimit)
      throw DomainError("carrier has " + std::to_string(n) + " points, cap is " +
                        std::to_string(std::min(cap, kHardCarrierLimit)));
    {
      std::vector<std::string> sorted = carrier;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("carrier labels must be distinct");
    }
    const PointSet all = full_set(n);
    // Partition refinement: each generator splits every block it cuts.
    std::vector<PointSet> blocks{all};
    for (const PointSet g : generators) {
      if (!subset_of(g, all)) throw DomainError("generator is not contained in the carrier");
      std::vector<PointSet> next;
      next.reserve(blocks.size() * 2);
      for (const PointSet b : blocks) {
        if (const PointSet in = b & g) next.push_back(in);
        if (const PointSet out = b & ~g) next.push_back(out);
      }
      blocks = std::move(next);
    }
    return FinSpace(std::move(carrier), std::move(blocks));
  }

  static FinSpace generate(std::vector<std::string> carrier,
                           const std::vector<std::vector<std::string>>& generators,
                           std::size_t cap = kDefaultCarrierCap) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < carrier.size(); ++i) index.emplace(carrier[i], i);
    std::vector<PointSet> masks;
    masks.reserve(generators.size());
    for (const auto& gen : generators) {
      PointSet m = 0;
      for (const auto& label : gen) {
        const auto it = index.find(label);
        if (it == index.end()) throw DomainError("generator mentions '" + label + "', which is not in the carrier");
        m |= singleton(it->second);
      }
      masks.push_back(m);
    }
    return generate(std::move(carrier), masks, cap);
  }

  static FinSpace discrete(std::vector<std::string> carrier, std::size_t cap = kDefaultCarrierCap) {
    std::vector<PointSet> gens;
    for (std::size_t i = 0; i < carrier.size(); ++i) gens.push_back(singleton(i));
    return generate(std::move(carrier), gens, cap);
  }

  static FinSpace indiscrete(std::vector<std::string> carrier, std::size_t cap = kDefaultCarrierCap) {
    return generate(std::move(carrier), std::span<const PointSet>{}, cap);
  }

  /// Discrete space with labels "0", "1", ..., "n-1".
  static FinSpace discrete(std::size_t n) { return discrete(numbered_labels(n), std::max(n, kDefaultCarrierCap)); }

  static std::vector<std::string> numbered_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
  }

  std::size_t size() const { return data_->carrier.size(); }
  const std::vector<std::string>& carrier() const { return data_->carrier; }
  const std::vector<PointSet>& sigma() const { return data_->sigma; }
  const std::vector<PointSet>& atoms() const { return data_->atoms; }
  std::size_t atom_count() const { return data_->atoms.size(); }
  PointSet full() const { return full_set(size()); }

  /// Index of the atom containing `point`.
  std::size_t atom_of(std::size_t point) const {
    if (point >= size()) throw DomainError("point index " + std::to_string(point) + " out of range");
    return data_->atom_of[point];
  }

  std::size_t point_index(std::string_view label) const {
    const auto& c = data_->carrier;
    const auto it = std::find(c.begin(), c.end(), label);
    if (it == c.end()) throw DomainError("unknown point '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - c.begin());
  }

  /// Lowest-indexed point of an atom; any point would do.
  std::size_t representative(std::size_t atom) const {
    return static_cast<std::size_t>(std::countr_zero(data_->atoms.at(atom)));
  }

  bool is_measurable(PointSet s) const { return std::binary_search(sigma().begin(), sigma().end(), s); }

  PointSet set_of(const std::vector<std::string>& labels) const {
    PointSet m = 0;
    for (const auto& l : labels) m |= singleton(point_index(l));
    return m;
  }

  std::vector<std::string> labels_of(PointSet s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (s & singleton(i)) out.push_back(data_->carrier[i]);
    return out;
  }

  /// Atoms contained in a measurable set; throws for non-measurable input.
  std::vector<std::size_t> atoms_in(PointSet s) const {
    require_measurable(s);
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < atom_count(); ++a)
      if (subset_of(data_->atoms[a], s)) out.push_back(a);
    return out;
  }

  void require_measurable(PointSet s) const {
    if (!is_measurable(s)) throw DomainError("set {" + join(labels_of(s)) + "} is not measurable");
  }

  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.data_ == b.data_ || (a.data_->carrier == b.data_->carrier && a.data_->atoms == b.data_->atoms);
  }

 private:
  struct Data {
    std::vector<std::string> carrier;
    std::vector<PointSet> atoms;
    std::vector<PointSet> sigma;
    std::vector<std::size_t> atom_of;
  };

  FinSpace(std::vector<std::string> carrier, std::vector<PointSet> atoms) {
    auto d = std::make_shared<Data>();
    std::sort(atoms.begin(), atoms.end(),
              [](PointSet x, PointSet y) { return std::countr_zero(x) < std::countr_zero(y); });
    d->atom_of.assign(carrier.size(), 0);
    for (std::size_t a = 0; a < atoms.size(); ++a)
      for (std::size_t i = 0; i < carrier.size(); ++i)
        if (atoms[a] & singleton(i)) d->atom_of[i] = a;
    // Every measurable set is a union of atoms.
    const std::size_t k = atoms.size();
    d->sigma.reserve(std::size_t{1} << k);
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
      PointSet s = 0;
      for (std::size_t a = 0; a < k; ++a)
        if (pick & (std::uint64_t{1} << a)) s |= atoms[a];
      d->sigma.push_back(s);
    }
    std::sort(d->sigma.begin(), d->sigma.end());
    d->carrier = std::move(carrier);
    d->atoms = std::move(atoms);
    data_ = std::move(d);
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
    return out;
  }

  std::shared_ptr<const Data> data_;
};

/// Generates the smallest sigma-algebra containing `generators`.
inline FinSpace generate_sigma(std::vector<std::string> carrier, const std::vector<std::vector<std::string>>& generators,
                               std::size_t cap = kDefaultCarrierCap) {
  return FinSpace::generate(std::move(carrier), generators, cap);
}

inline const std::vector<PointSet>& atoms(const FinSpace& space) { return space.atoms(); }

inline void require_same_space(const FinSpace& a, const FinSpace& b, std::string_view what) {
  if (!(a == b)) throw DomainError(std::string(what) + ": spaces differ");
}

/// A total map between carriers. Measurability is not assumed; see
/// is_measurable().
struct MeasMap {
  FinSpace dom;
  FinSpace cod;
  std::vector<std::size_t> table;

  MeasMap(FinSpace d, FinSpace c, std::vector<std::size_t> t) : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
    if (table.size() != dom.size()) throw DomainError("map table is not total on the domain carrier");
    for (const auto y : table)
      if (y >= cod.size()) throw DomainError("map table points outside the codomain carrier");
  }

  static MeasMap identity(const FinSpace& s) {
    std::vector<std::size_t> t(s.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return MeasMap(s, s, std::move(t));
  }

  static MeasMap constant(const FinSpace& dom, const FinSpace& cod, std::size_t target) {
    return MeasMap(dom, cod, std::vector<std::size_t>(dom.size(), target));
  }

  std::size_t operator()(std::size_t point) const { return table.at(point); }

  PointSet preimage(PointSet s) const {
    PointSet out = 0;
    for (std::size_t i = 0; i < table.size(); ++i)
      if (s & singleton(table[i])) out |= singleton(i);
    return out;
  }

  /// Codomain atom hit by a domain atom. Only meaningful for measurable maps.
  std::size_t atom_image(std::size_t dom_atom) const { return cod.atom_of(table[dom.representative(dom_atom)]); }
};

/// Preimages of codomain atoms must be measurable; that is equivalent to all
/// preimages being measurable because preimage commutes with unions.
inline bool is_measurable(const MeasMap& g) {
  return std::all_of(g.cod.atoms().begin(), g.cod.atoms().end(),
                     [&](PointSet a) { return g.dom.is_measurable(g.preimage(a)); });
}

inline void require_measurable(const MeasMap& g) {
  if (!is_measurable(g)) throw DomainError("map is not measurable");
}

/// outer ∘ inner
inline MeasMap compose(const MeasMap& outer, const MeasMap& inner) {
  require_same_space(inner.cod, outer.dom, "compose");
  std::vector<std::size_t> t(inner.dom.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = outer.table[inner.table[i]];
  return MeasMap(inner.dom, outer.cod, std::move(t));
}

/// A measurable function into the unit interval, stored once per atom.
class IFunction {
 public:
  IFunction(FinSpace space, std::vector<Rational> atom_values) : space_(std::move(space)), values_(std::move(atom_values)) {
    if (values_.size() != space_.atom_count())
      throw DomainError("function has " + std::to_string(values_.size()) + " atom values, space has " +
                        std::to_string(space_.atom_count()) + " atoms");
    for (const auto& v : values_)
      if (!in_unit_interval(v)) throw DomainError("function value " + to_string(v) + " lies outside [0,1]");
  }

  /// Validates a per-point table and compresses it to atoms.
  static IFunction from_pointwise(const FinSpace& space, const std::vector<Rational>& point_values) {
    if (point_values.size() != space.size()) throw DomainError("pointwise table is not total on the carrier");
    std::vector<Rational> vals(space.atom_count());
    for (std::size_t a = 0; a < space.atom_count(); ++a) vals[a] = point_values[space.representative(a)];
    for (std::size_t i = 0; i < space.size(); ++i)
      if (point_values[i] != vals[space.atom_of(i)])
        throw DomainError("function is not constant on atoms, so it is not measurable");
    return IFunction(space, std::move(vals));
  }

  static IFunction constant(const FinSpace& space, const Rational& r) {
    return IFunction(space, std::vector<Rational>(space.atom_count(), r));
  }

  const FinSpace& space() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at_atom(std::size_t a) const { return values_.at(a); }
  const Rational& at_point(std::size_t p) const { return values_[space_.atom_of(p)]; }

  friend bool operator==(const IFunction& a, const IFunction& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  FinSpace space_;
  std::vector<Rational> values_;
};

inline IFunction characteristic(const FinSpace& space, PointSet a) {
  space.require_measurable(a);
  std::vector<Rational> vals(space.atom_count());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = subset_of(space.atoms()[i], a) ? 1 : 0;
  return IFunction(space, std::move(vals));
}

inline IFunction atom_indicator(const FinSpace& space, std::size_t atom) {
  return characteristic(space, space.atoms().at(atom));
}

/// r·f + (1−r)·g
inline IFunction mix(const Rational& r, const IFunction& f, const IFunction& g) {
  require_same_space(f.space(), g.space(), "mix");
  if (!in_unit_interval(r)) throw DomainError("mixing weight outside [0,1]");
  std::vector<Rational> vals(f.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = r * f.at_atom(i) + (1 - r) * g.at_atom(i);
  return IFunction(f.space(), std::move(vals));
}

inline bool pointwise_leq(const IFunction& f, const IFunction& g) {
  require_same_space(f.space(), g.space(), "pointwise comparison");
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (f.at_atom(i) > g.at_atom(i)) return false;
  return true;
}

/// f ∘ g for f on g.cod.
inline IFunction precompose(const IFunction& f, const MeasMap& g) {
  require_same_space(f.space(), g.cod, "precompose");
  require_measurable(g);
  std::vector<Rational> vals(g.dom.atom_count());
  for (std::size_t a = 0; a < vals.size(); ++a) vals[a] = f.at_atom(g.atom_image(a));
  return IFunction(g.dom, std::move(vals));
}

}  // namespace girylab
