#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "petal/error.hpp"
#include "petal/fingerprint.hpp"
#include "petal/grid.hpp"
#include "petal/planar_diagram.hpp"
#include "petal/sequence.hpp"

#ifndef PETAL_DATA_DIR
#define PETAL_DATA_DIR "data"
#endif

namespace petal {

// Fingerprint of a sequence along the grid route (the cheaper of the two).
inline PlanarDiagram sequence_to_pd(const PetalSequence& s) { return grid_to_pd(petal_to_grid(s)); }
inline Fingerprint sequence_fingerprint(const PetalSequence& s) { return fingerprint(sequence_to_pd(s)); }

struct KnotRecord {
  std::string name;
  int crossing_number = 0;
  PlanarDiagram pd;
  int table_petal_number = 1;
  PetalSequence table_sequence;
  Fingerprint fingerprint;
  Fingerprint mirror_fingerprint;
};

enum class Chirality { AsStored, Mirrored, AmphichiralAmbiguous };

inline std::string_view chirality_name(Chirality c) {
  switch (c) {
    case Chirality::AsStored: return "as-stored";
    case Chirality::Mirrored: return "mirrored";
    case Chirality::AmphichiralAmbiguous: return "amphichiral-ambiguous";
  }
  return "?";
}

struct Identification {
  std::string name;
  Chirality chirality;
  friend bool operator==(const Identification&, const Identification&) = default;
};

inline nlohmann::json identifications_to_json(const std::vector<Identification>& ids) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& id : ids) out.push_back({{"name", id.name}, {"chirality", chirality_name(id.chirality)}});
  return out;
}

inline std::string default_table_path() {
  if (const char* env = std::getenv("PETAL_DATA_DIR")) return std::string(env) + "/knot_table.json";
  return std::string(PETAL_DATA_DIR) + "/knot_table.json";
}

inline KnotRecord parse_record(const nlohmann::json& j) {
  KnotRecord r;
  try {
    r.name = j.at("name").get<std::string>();
    r.crossing_number = j.at("crossing_number").get<int>();
    r.pd = diagram_from_json(j.at("pd"));
    r.table_petal_number = j.at("table_petal_number").get<int>();
    r.table_sequence = PetalSequence::validate(j.at("table_sequence").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::CorruptRecord, "record " + r.name + ": " + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptRecord, "record " + r.name + ": " + e.what());
  }
  if (r.table_petal_number % 2 == 0 || r.table_sequence.petals() != r.table_petal_number)
    throw Error(ErrorKind::CorruptRecord, "record " + r.name + ": petal number does not match its sequence");
  r.fingerprint = fingerprint(r.pd);
  r.mirror_fingerprint = r.fingerprint.mirrored();
  return r;
}

inline std::vector<KnotRecord> load_table(const std::string& path = default_table_path()) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingData, "cannot open knot table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::CorruptRecord, "knot table is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_array()) throw Error(ErrorKind::CorruptRecord, "knot table must be a JSON array");
  std::vector<KnotRecord> out;
  out.reserve(j.size());
  for (const auto& rec : j) out.push_back(parse_record(rec));
  return out;
}

struct Collision {
  Fingerprint fingerprint;
  std::vector<std::string> names;
};

// Immutable after construction; lookups are const and thread-safe.
class KnotDatabase {
 public:
  KnotDatabase() = default;
  explicit KnotDatabase(std::vector<KnotRecord> records) : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      by_name_[records_[i].name] = i;
      by_jones_[records_[i].fingerprint.jones].push_back(i);
      if (records_[i].mirror_fingerprint.jones != records_[i].fingerprint.jones)
        by_jones_[records_[i].mirror_fingerprint.jones].push_back(i);
    }
  }

  static KnotDatabase load(const std::string& path = default_table_path()) { return KnotDatabase(load_table(path)); }

  const std::vector<KnotRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  const KnotRecord* find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &records_[it->second];
  }

  // Records whose stored or mirrored Jones equals the given polynomial.
  std::vector<std::size_t> jones_candidates(const Polynomial& jones) const {
    auto it = by_jones_.find(jones);
    return it == by_jones_.end() ? std::vector<std::size_t>{} : it->second;
  }

  bool jones_known(const Polynomial& jones) const { return by_jones_.contains(jones); }

  // Every record matching f on both Jones and Alexander, in table order.
  std::vector<Identification> identify(const Fingerprint& f) const {
    std::vector<Identification> out;
    for (std::size_t i : jones_candidates(f.jones)) {
      const KnotRecord& r = records_[i];
      const bool as_stored = r.fingerprint.jones == f.jones && r.fingerprint.alexander == f.alexander;
      const bool mirrored = r.mirror_fingerprint.jones == f.jones && r.mirror_fingerprint.alexander == f.alexander;
      if (as_stored && mirrored) out.push_back({r.name, Chirality::AmphichiralAmbiguous});
      else if (as_stored) out.push_back({r.name, Chirality::AsStored});
      else if (mirrored) out.push_back({r.name, Chirality::Mirrored});
    }
    return out;
  }

  bool identifies_as(const Fingerprint& f, const std::string& name) const {
    auto ids = identify(f);
    return std::any_of(ids.begin(), ids.end(), [&](const Identification& id) { return id.name == name; });
  }

  // Distinct names sharing a (Jones, Alexander) pair, counting mirror images.
  std::vector<Collision> collision_report() const {
    std::map<std::pair<std::string, std::string>, Collision> seen;
    for (const auto& r : records_)
      for (const Fingerprint* f : {&r.fingerprint, &r.mirror_fingerprint}) {
        auto& c = seen[{f->jones.to_string(), f->alexander.to_string()}];
        c.fingerprint = *f;
        if (std::find(c.names.begin(), c.names.end(), r.name) == c.names.end()) c.names.push_back(r.name);
      }
    std::vector<Collision> out;
    for (auto& [key, c] : seen)
      if (c.names.size() > 1) out.push_back(std::move(c));
    return out;
  }

 private:
  std::vector<KnotRecord> records_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<Polynomial, std::vector<std::size_t>, PolynomialHash> by_jones_;
};

inline KnotDatabase restricted(const KnotDatabase& db, const std::vector<std::string>& names) {
  std::vector<KnotRecord> keep;
  for (const auto& n : names)
    if (const KnotRecord* r = db.find(n)) keep.push_back(*r);
  return KnotDatabase(std::move(keep));
}

}  // namespace petal
