#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "girylab/rational.hpp"

namespace girylab {

using Json = nlohmann::ordered_json;

/// Outcome of a checked property. Failures carry a reproducible witness.
struct Verdict {
  std::string property;
  bool passed = true;
  Json witness = Json::object();
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  static Verdict pass(std::string property, std::size_t trials = 0, std::uint64_t seed = 0, Json witness = Json::object()) {
    return Verdict{std::move(property), true, std::move(witness), trials, seed};
  }
  static Verdict fail(std::string property, Json witness, std::size_t trials = 0, std::uint64_t seed = 0) {
    return Verdict{std::move(property), false, std::move(witness), trials, seed};
  }

  explicit operator bool() const { return passed; }
};

inline Json rational_json(const Rational& r) { return to_string(r); }

template <class Range>
Json rationals_json(const Range& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["property"] = v.property;
  j["result"] = v.passed ? "pass" : "fail";
  j["witness"] = v.witness;
  j["trials"] = v.trials;
  j["seed"] = v.seed;
  return j;
}

}  // namespace girylab
