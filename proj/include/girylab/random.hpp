#pragma once

// Deterministic case generation. std::mt19937_64's output sequence is fixed
// by the standard; bounded draws use plain modulo so streams do not depend
// on the standard library's distribution implementations.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"

namespace girylab {

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CaseRng {
 public:
  explicit CaseRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream for (seed, property, case index).
  static CaseRng for_case(std::uint64_t seed, std::string_view property, std::uint64_t index) {
    return CaseRng(splitmix64(seed ^ splitmix64(fnv1a(property) ^ splitmix64(index))));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  /// Integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Rational in [0,1] with denominator at most max_den; hits 0 and 1 often.
  Rational unit(std::int64_t max_den = 64) {
    switch (below(8)) {
      case 0: return Rational(0);
      case 1: return Rational(1);
      default: break;
    }
    const std::int64_t den = between(1, max_den);
    return make_rational(between(0, den), den);
  }

  /// Rational in [lo, hi] with bounded denominator.
  Rational in_range(const Rational& lo, const Rational& hi, std::int64_t max_den = 64) {
    return lo + (hi - lo) * unit(max_den);
  }

 private:
  std::mt19937_64 engine_;
};

/// Random function into [0,1], one value per atom.
inline IFunction random_ifunction(const FinSpace& space, CaseRng& rng, std::int64_t max_den = 64) {
  std::vector<Rational> vals(space.atom_count());
  for (auto& v : vals) v = rng.unit(max_den);
  return IFunction(space, std::move(vals));
}

/// Exact probability vector from a random integer composition.
inline std::vector<Rational> random_simplex_point(std::size_t k, CaseRng& rng, std::int64_t max_part = 8) {
  std::vector<std::int64_t> parts(k);
  std::int64_t total = 0;
  for (auto& p : parts) {
    p = rng.chance(1, 4) ? 0 : rng.between(0, max_part);
    total += p;
  }
  if (total == 0) {
    parts[rng.below(k)] = 1;
    total = 1;
  }
  std::vector<Rational> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = make_rational(parts[i], total);
  return out;
}

}  // namespace girylab
