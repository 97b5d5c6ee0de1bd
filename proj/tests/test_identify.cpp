#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "petal/petal.hpp"
#include "reference.hpp"

using namespace petal;

namespace {

const KnotDatabase& db() {
  static const auto d = KnotDatabase::load();
  return d;
}

PetalSequence seq(std::vector<int> v) { return PetalSequence::validate(std::move(v)); }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

ErrorKind load_error(const std::string& path) {
  try {
    load_table(path);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Table, CoversAllPrimeKnotsThroughNineCrossings) {
  const auto& records = db().records();
  EXPECT_EQ(records.size(), 85u);
  std::map<int, int> per_crossing;
  for (const auto& r : records) ++per_crossing[r.crossing_number];
  const std::map<int, int> expected{{0, 1}, {3, 1}, {4, 1}, {5, 2}, {6, 3}, {7, 7}, {8, 21}, {9, 49}};
  EXPECT_EQ(per_crossing, expected);
  for (const auto& r : records) {
    EXPECT_EQ(r.pd.size(), static_cast<std::size_t>(r.crossing_number)) << r.name;
    EXPECT_TRUE(reference_knots().contains(r.name)) << r.name;
  }
}

TEST(Table, FingerprintsMatchReference) {
  for (const auto& r : db().records()) {
    const auto& ref = reference_knots().at(r.name);
    EXPECT_EQ(r.fingerprint.jones, ref.jones) << r.name;
    EXPECT_EQ(r.fingerprint.alexander, ref.alexander) << r.name;
  }
}

TEST(Table, TrefoilRecord) {
  const auto* r = db().find("3_1");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->table_petal_number, 5);
  EXPECT_EQ(r->table_sequence, seq({1, 3, 5, 2, 4}));
  EXPECT_EQ(db().find("10_1"), nullptr);
}

TEST(Table, PetalNumberBoundsArcIndex) {
  // A petal grid is an arc presentation with p arcs, so the arc index never exceeds p.
  for (const auto& r : db().records())
    EXPECT_LE(reference_knots().at(r.name).arc_index, std::max(2, r.table_petal_number)) << r.name;
}

TEST(Table, NoCollisions) {
  EXPECT_TRUE(db().collision_report().empty());
  EXPECT_TRUE(restricted(db(), {"3_1", "4_1"}).collision_report().empty());
}

TEST(Table, CollisionReportFindsDuplicates) {
  auto recs = db().records();
  auto copy = *db().find("5_2");
  copy.name = "5_2_copy";
  recs.push_back(copy);
  const auto report = KnotDatabase(recs).collision_report();
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front().names, (std::vector<std::string>{"5_2", "5_2_copy"}));
}

TEST(Identify, TableSequences) {
  for (const auto& r : db().records()) {
    const auto ids = db().identify(sequence_fingerprint(r.table_sequence));
    ASSERT_EQ(ids.size(), 1u) << r.name;
    EXPECT_EQ(ids[0].name, r.name);
  }
}

TEST(Identify, Chirality) {
  const auto t = seq({1, 3, 5, 2, 4});
  auto ids = db().identify(sequence_fingerprint(t));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0], (Identification{"3_1", Chirality::AsStored}));
  ids = db().identify(sequence_fingerprint(mirror(t)));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0], (Identification{"3_1", Chirality::Mirrored}));
  ids = db().identify(sequence_fingerprint(seq({1, 3, 5, 2, 7, 4, 6})));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0], (Identification{"4_1", Chirality::AmphichiralAmbiguous}));
  EXPECT_EQ(chirality_name(Chirality::AsStored), "as-stored");
  const auto j = identifications_to_json(ids);
  EXPECT_EQ(j[0]["name"], "4_1");
}

TEST(Identify, RequiresBothPolynomials) {
  auto f = db().find("3_1")->fingerprint;
  f.alexander = db().find("4_1")->fingerprint.alexander;
  EXPECT_TRUE(db().identify(f).empty());
  EXPECT_TRUE(db().jones_known(f.jones));
  // Composite knots are outside the table.
  const auto granny = seq({1, 3, 5, 2, 4});
  EXPECT_TRUE(db().identify(sequence_fingerprint(compose(granny, granny))).empty());
}

TEST(Identify, UnknotAndTorusKnots) {
  EXPECT_EQ(db().identify(unknot_fingerprint()).at(0).name, "0_1");
  EXPECT_TRUE(db().identifies_as(sequence_fingerprint(torus_sequence(2)), "3_1"));
  EXPECT_TRUE(db().identifies_as(sequence_fingerprint(torus_sequence(3)), "8_19"));
  EXPECT_TRUE(db().identifies_as(fingerprint(braid_to_pd(repeated({3, {1, 2}}, 4))), "8_19"));
}

TEST(Load, Errors) {
  EXPECT_EQ(load_error("/nonexistent/knot_table.json"), ErrorKind::MissingData);
  EXPECT_EQ(load_error(temp_file("petal_bad_json.json", "[{")), ErrorKind::CorruptRecord);
  EXPECT_EQ(load_error(temp_file("petal_not_array.json", "{}")), ErrorKind::CorruptRecord);
  EXPECT_EQ(load_error(temp_file("petal_missing_field.json", R"([{"name": "3_1"}])")), ErrorKind::CorruptRecord);
  EXPECT_EQ(load_error(temp_file("petal_bad_pd.json",
                                 R"([{"name": "x", "crossing_number": 1, "pd": [[1, 2, 3, 4]],
                                     "table_petal_number": 1, "table_sequence": [1]}])")),
            ErrorKind::CorruptRecord);
  EXPECT_EQ(load_error(temp_file("petal_bad_count.json",
                                 R"([{"name": "x", "crossing_number": 0, "pd": [],
                                     "table_petal_number": 3, "table_sequence": [1]}])")),
            ErrorKind::CorruptRecord);
}

TEST(Load, DefaultPathHonoursEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "petal_env_table";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "knot_table.json")
      << R"([{"name": "0_1", "crossing_number": 0, "pd": [], "table_petal_number": 1, "table_sequence": [1]}])";
  setenv("PETAL_DATA_DIR", dir.c_str(), 1);
  EXPECT_EQ(KnotDatabase::load().size(), 1u);
  unsetenv("PETAL_DATA_DIR");
  EXPECT_EQ(KnotDatabase::load().size(), 85u);
}
