#pragma once

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "petal/alexander.hpp"
#include "petal/bracket.hpp"
#include "petal/laurent.hpp"
#include "petal/planar_diagram.hpp"

namespace petal {

struct Fingerprint {
  Polynomial jones;
  Polynomial alexander;
  BigInt determinant = 1;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  // Mirror image: Jones reflects, Alexander is already symmetric.
  Fingerprint mirrored() const { return {jones.reflected(), alexander, determinant}; }

  std::string to_string() const {
    return "jones=" + jones.to_string() + "; alexander=" + alexander.to_string() +
           "; determinant=" + determinant.str();
  }
};

inline Fingerprint make_fingerprint(Polynomial jones_poly, Polynomial alexander_poly) {
  BigInt det = determinant_of(alexander_poly);
  return {std::move(jones_poly), std::move(alexander_poly), std::move(det)};
}

inline Fingerprint fingerprint(const PlanarDiagram& d) { return make_fingerprint(jones_fast(d), alexander(d)); }

inline Fingerprint unknot_fingerprint() { return {Polynomial(BigInt(1)), Polynomial(BigInt(1)), BigInt(1)}; }

inline nlohmann::json fingerprint_to_json(const Fingerprint& f) {
  return {{"jones", polynomial_to_json(f.jones)},
          {"alexander", polynomial_to_json(f.alexander)},
          {"determinant", f.determinant.str()}};
}

inline Fingerprint fingerprint_from_json(const nlohmann::json& j) {
  try {
    Fingerprint f{polynomial_from_json(j.at("jones")), polynomial_from_json(j.at("alexander")), BigInt(0)};
    const auto& det = j.at("determinant");
    f.determinant = det.is_string() ? BigInt(det.get<std::string>()) : BigInt(det.get<long long>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("fingerprint JSON: ") + e.what());
  }
}

// Hash over the Jones polynomial only; enough to bucket lookups.
struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const {
    std::size_t h = std::hash<int>{}(p.min_exponent());
    for (const auto& c : p.dense()) {
      const auto v = static_cast<long long>(c % BigInt(1000000007));
      h ^= std::hash<long long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace petal
