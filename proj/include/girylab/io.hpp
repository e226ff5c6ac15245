#pragma once

// JSON encodings. Rationals are always strings "p/q". Spaces are written as
// their carrier plus their atoms as generators, which regenerates the same
// sigma-algebra. Wherever a space is expected, a string is read as a path to
// a space file, relative to the referring file's directory.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "girylab/codensity.hpp"
#include "girylab/duality.hpp"
#include "girylab/error.hpp"
#include "girylab/giry.hpp"
#include "girylab/measure.hpp"
#include "girylab/rational.hpp"
#include "girylab/sigma.hpp"
#include "girylab/verdict.hpp"

namespace girylab::io {

namespace fs = std::filesystem;

/// Runs `body`, converting domain and JSON errors into an IngestionError that
/// names what was being read.
template <class F>
auto ingest(const std::string& what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const IngestionError&) {
    throw;
  } catch (const DomainError& e) {
    throw IngestionError(what + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(what + ": malformed JSON (" + e.what() + ")");
  }
}

inline Json load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestionError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

inline Rational rational_from(const Json& j) {
  if (!j.is_string()) throw DomainError("rationals must be strings \"p/q\", got " + j.dump());
  return parse_rational(j.get<std::string>());
}

// -- FinSpace -------------------------------------------------------------------

inline Json to_json(const FinSpace& s) {
  Json gens = Json::array();
  for (const auto a : s.atoms()) gens.push_back(s.labels_of(a));
  return Json{{"carrier", s.carrier()}, {"generators", gens}};
}

inline FinSpace space_from_json(const Json& j, const fs::path& base_dir = {}, std::size_t cap = kDefaultCarrierCap) {
  if (j.is_string()) {
    const fs::path p = base_dir / j.get<std::string>();
    const Json inner = load_file(p);
    return space_from_json(inner, p.parent_path(), cap);
  }
  return ingest("space", [&] {
    if (!j.is_object() || !j.contains("carrier")) throw DomainError("expected {\"carrier\": [...], \"generators\": [[...]]}");
    auto carrier = j.at("carrier").get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> gens;
    if (j.contains("generators")) gens = j.at("generators").get<std::vector<std::vector<std::string>>>();
    return FinSpace::generate(std::move(carrier), gens, cap);
  });
}

// -- Measure ----------------------------------------------------------------------

inline Json weights_json(const std::vector<Rational>& w) {
  Json out = Json::object();
  for (std::size_t a = 0; a < w.size(); ++a) out[std::to_string(a)] = to_string(w[a]);
  return out;
}

/// {"atom_index": "p/q"}; omitted atoms weigh 0.
inline std::vector<Rational> weights_from_json(const Json& j, const FinSpace& space) {
  if (!j.is_object()) throw DomainError("weights must be an object keyed by atom index");
  std::vector<Rational> w(space.atom_count(), Rational(0));
  for (const auto& [key, value] : j.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw DomainError("weight key '" + key + "' is not an atom index");
    }
    if (idx >= w.size()) throw DomainError("atom index " + key + " out of range (space has " + std::to_string(w.size()) + " atoms)");
    w[idx] = rational_from(value);
  }
  return w;
}

inline Json to_json(const Measure& m) { return Json{{"space", to_json(m.space())}, {"weights", weights_json(m.weights())}}; }

inline Measure measure_from_json(const Json& j, const fs::path& base_dir = {}) {
  const FinSpace space = space_from_json(j.at("space"), base_dir);
  return ingest("measure", [&] { return Measure(space, weights_from_json(j.at("weights"), space)); });
}

inline Json to_json(const IntervalMeasure& m) {
  Json points = Json::array(), uniform = Json::array();
  for (const auto& p : m.points()) points.push_back({to_string(p.location), to_string(p.mass)});
  for (const auto& u : m.pieces()) uniform.push_back({to_string(u.lo), to_string(u.hi), to_string(u.mass)});
  return Json{{"points", points}, {"uniform", uniform}};
}

inline IntervalMeasure interval_measure_from_json(const Json& j) {
  return ingest("interval measure", [&] {
    std::vector<PointMass> points;
    std::vector<UniformPiece> pieces;
    if (j.contains("points"))
      for (const auto& p : j.at("points")) {
        if (p.size() != 2) throw DomainError("point entries are [\"loc\", \"mass\"]");
        points.push_back({rational_from(p[0]), rational_from(p[1])});
      }
    if (j.contains("uniform"))
      for (const auto& u : j.at("uniform")) {
        if (u.size() != 3) throw DomainError("uniform entries are [\"a\", \"b\", \"mass\"]");
        pieces.push_back({rational_from(u[0]), rational_from(u[1]), rational_from(u[2])});
      }
    return IntervalMeasure(std::move(points), std::move(pieces));
  });
}

// -- Kernel -----------------------------------------------------------------------

inline Json to_json(const Kernel& k) {
  Json rows = Json::object();
  for (std::size_t a = 0; a < k.rows().size(); ++a) rows[std::to_string(a)] = weights_json(k.row(a).weights());
  return Json{{"dom", to_json(k.dom())}, {"cod", to_json(k.cod())}, {"rows", rows}};
}

inline Kernel kernel_from_json(const Json& j, const fs::path& base_dir = {}) {
  const FinSpace dom = space_from_json(j.at("dom"), base_dir);
  const FinSpace cod = space_from_json(j.at("cod"), base_dir);
  return ingest("kernel", [&] {
    const Json& rows = j.at("rows");
    std::vector<Measure> out;
    for (std::size_t a = 0; a < dom.atom_count(); ++a) {
      const auto key = std::to_string(a);
      if (!rows.contains(key)) throw DomainError("missing row for domain atom " + key);
      try {
        out.emplace_back(cod, weights_from_json(rows.at(key), cod));
      } catch (const DomainError& e) {
        throw DomainError("row " + key + ": " + e.what());
      }
    }
    if (rows.size() != dom.atom_count()) throw DomainError("rows mention atoms outside the domain");
    return Kernel(dom, cod, std::move(out));
  });
}

// -- Functional -------------------------------------------------------------------

/// {"space": ..., "coefficients": {"atom": "p/q"}} for coefficient forms, or
/// {"space": ..., "kind": "max" | "square" | "clamped-sum" | "eval", "point": label}.
inline Functional functional_from_json(const Json& j, const fs::path& base_dir = {}) {
  const FinSpace space = space_from_json(j.at("space"), base_dir);
  return ingest("functional", [&] {
    if (j.contains("coefficients")) return Functional::extensional(space, weights_from_json(j.at("coefficients"), space));
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "max") return max_functional(space);
    if (kind == "clamped-sum") return clamped_sum_functional(space);
    if (kind == "square") return square_functional(space, space.point_index(j.at("point").get<std::string>()));
    if (kind == "eval") return eta_S(space, space.point_index(j.at("point").get<std::string>()));
    throw DomainError("unknown functional kind '" + kind + "'");
  });
}

inline Json to_json(const Functional& phi) {
  if (phi.is_extensional()) return Json{{"space", to_json(phi.space())}, {"coefficients", weights_json(phi.coefficients())}};
  return Json{{"space", to_json(phi.space())}, {"kind", phi.label()}};
}

}  // namespace girylab::io
