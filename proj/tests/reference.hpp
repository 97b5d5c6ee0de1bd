#pragma once

#include <fstream>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "petal/laurent.hpp"

// Published Jones and Alexander polynomials, kept apart from the shipped table.
struct ReferenceKnot {
  petal::Polynomial jones, alexander;
  int arc_index = 0;
  std::string symmetry;
};

inline const std::map<std::string, ReferenceKnot>& reference_knots() {
  static const auto table = [] {
    std::map<std::string, ReferenceKnot> out;
    std::ifstream in(std::string(PETAL_FIXTURES) + "/knotinfo_reference.json");
    for (const auto& j : nlohmann::json::parse(in))
      out[j.at("name").get<std::string>()] = {petal::polynomial_from_json(j.at("jones")),
                                              petal::polynomial_from_json(j.at("alexander")),
                                              j.at("arc_index").get<int>(), j.at("symmetry_type").get<std::string>()};
    return out;
  }();
  return table;
}
