#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "petal/petal.hpp"
#include "reference.hpp"

using namespace petal;

namespace {

PetalSequence seq(std::vector<int> v) { return PetalSequence::validate(std::move(v)); }

Polynomial jones_of(const PlanarDiagram& d) { return jones_from_bracket(bracket_bruteforce(d), d.writhe()); }

// Counts interleaving vertical/horizontal pairs from explicit segment endpoints.
std::size_t interleavings(const GridDiagram& g) {
  struct Seg {
    int fixed, lo, hi;
  };
  std::vector<Seg> vert, hor;
  const int n = g.size();
  for (int c = 0; c < n; ++c) {
    const int a = g.o_rows()[static_cast<std::size_t>(c)], b = g.x_rows()[static_cast<std::size_t>(c)];
    vert.push_back({c, std::min(a, b), std::max(a, b)});
  }
  for (int r = 1; r <= n; ++r) {
    int a = -1, b = -1;
    for (int c = 0; c < n; ++c) {
      if (g.o_rows()[static_cast<std::size_t>(c)] == r) a = c;
      if (g.x_rows()[static_cast<std::size_t>(c)] == r) b = c;
    }
    hor.push_back({r, std::min(a, b), std::max(a, b)});
  }
  std::size_t count = 0;
  for (auto& v : vert)
    for (auto& h : hor)
      if (v.lo < h.fixed && h.fixed < v.hi && h.lo < v.fixed && v.fixed < h.hi) ++count;
  return count;
}

}  // namespace

TEST(Grid, TrefoilMarkers) {
  const auto g = petal_to_grid(seq({1, 3, 5, 2, 4}));
  ASSERT_EQ(g.size(), 5);
  // (column, O row, X row), columns 1-based.
  const std::vector<std::array<int, 3>> expected{{1, 1, 3}, {4, 3, 5}, {2, 5, 2}, {5, 2, 4}, {3, 4, 1}};
  for (auto [col, o, x] : expected) {
    EXPECT_EQ(g.o_rows()[static_cast<std::size_t>(col - 1)], o) << "column " << col;
    EXPECT_EQ(g.x_rows()[static_cast<std::size_t>(col - 1)], x) << "column " << col;
  }
  EXPECT_EQ(jones_of(grid_to_pd(g)), reference_knots().at("3_1").jones);
}

TEST(Grid, SmallSequencesAreCrossingFree) {
  const auto g1 = petal_to_grid(seq({1}));
  EXPECT_EQ(g1.size(), 2);
  EXPECT_TRUE(grid_to_pd(g1).empty());
  const auto g3 = petal_to_grid(seq({1, 3, 2}));
  EXPECT_EQ(g3.size(), 3);
  EXPECT_EQ(fingerprint(grid_to_pd(g3)), unknot_fingerprint());
  EXPECT_TRUE(grid_to_pd(GridDiagram({1, 2}, {2, 1})).empty());
}

TEST(Grid, FigureEight) {
  const auto d = grid_to_pd(petal_to_grid(seq({1, 3, 5, 2, 7, 4, 6})));
  const auto& ref = reference_knots().at("4_1");
  EXPECT_EQ(jones_of(d), ref.jones);
  EXPECT_EQ(alexander(d), ref.alexander);
}

TEST(Grid, RejectsMalformed) {
  auto kind_of = [](std::vector<int> o, std::vector<int> x) {
    try {
      GridDiagram(std::move(o), std::move(x));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind_of({1, 1}, {2, 2}), ErrorKind::MalformedGrid);
  EXPECT_EQ(kind_of({1, 2}, {1, 2}), ErrorKind::MalformedGrid);
  EXPECT_EQ(kind_of({1, 2}, {2}), ErrorKind::MalformedGrid);
  // Two components: a pair of disjoint 2x2 unknots.
  EXPECT_THROW(grid_to_pd(GridDiagram({1, 2, 3, 4}, {2, 1, 4, 3})), Error);
}

TEST(Grid, CrossingCountMatchesMarkers) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int p = 5 + 2 * static_cast<int>(seed % 4);
    const auto g = petal_to_grid(random_sequence(p, seed));
    const auto n = interleavings(g);
    EXPECT_EQ(grid_to_pd(g).size(), n);
    EXPECT_EQ(grid_crossing_count(g), n);
    EXPECT_LE(n, static_cast<std::size_t>(p * (p - 1) / 2));
  }
}

TEST(Grid, SpanAndInflectionProperties) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int p = 5 + 2 * static_cast<int>(seed % 4);
    const auto g = petal_to_grid(random_sequence(p, seed));
    const int shorter = (p - 1) / 2, longer = (p + 1) / 2;
    for (int span : horizontal_spans(g)) EXPECT_TRUE(span == shorter || span == longer) << span;
    EXPECT_EQ(inflection_columns(g).size(), 1u);
  }
}

TEST(Grid, JsonRoundTrip) {
  const auto g = petal_to_grid(seq({1, 3, 5, 2, 7, 4, 6}));
  const auto j = grid_to_json(g);
  EXPECT_EQ(j["size"], 7);
  const auto back = grid_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.o_rows(), g.o_rows());
  EXPECT_EQ(back.x_rows(), g.x_rows());
  EXPECT_THROW(grid_from_json(nlohmann::json{{"o", {1, 2}}}), Error);
  EXPECT_THROW(grid_from_json(nlohmann::json{{"size", 3}, {"o", {1, 2}}, {"x", {2, 1}}}), Error);
}

TEST(Geometric, CrossingCountIsBinomial) {
  EXPECT_TRUE(petal_to_pd_geometric(seq({1})).empty());
  for (int p : {3, 5, 7, 9, 11}) {
    const auto d = petal_to_pd_geometric(random_sequence(p, static_cast<std::uint64_t>(p)));
    EXPECT_EQ(d.size(), static_cast<std::size_t>(p * (p - 1) / 2));
    EXPECT_NO_THROW(PlanarDiagram(d.crossings()));
  }
}

TEST(Geometric, AgreesWithGridPath) {
  const auto t = seq({1, 3, 5, 2, 4});
  EXPECT_EQ(jones_of(petal_to_pd_geometric(t)), jones_of(sequence_to_pd(t)));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int p = 3 + 2 * static_cast<int>(seed % 4);
    const auto s = random_sequence(p, seed + 500);
    EXPECT_EQ(fingerprint(petal_to_pd_geometric(s)), sequence_fingerprint(s)) << s.to_string();
  }
}

TEST(Braid, Examples) {
  const auto trefoil = braid_to_pd({2, {1, 1, 1}});
  EXPECT_EQ(trefoil.size(), 3u);
  EXPECT_EQ(trefoil.writhe(), 3);
  EXPECT_EQ(jones_of(trefoil), reference_knots().at("3_1").jones);
  EXPECT_EQ(fingerprint(braid_to_pd({2, {1, 1, -1}})), unknot_fingerprint());
  EXPECT_EQ(fingerprint(braid_to_pd({3, {1, -2, 1, -2}})).jones, reference_knots().at("4_1").jones);
}

TEST(Braid, MultiComponentRejected) {
  try {
    braid_to_pd({2, {1, -1}});
    FAIL() << "two-component closure accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MultiComponentClosure);
  }
  EXPECT_THROW(braid_to_pd({2, {2}}), Error);
  EXPECT_THROW(braid_to_pd({3, {0, 1}}), Error);
}

TEST(Braid, TorusKnotCertifiesTorusSequence) {
  const auto d = braid_to_pd(repeated({4, {1, 2, 3}}, 5));
  EXPECT_EQ(d.size(), 15u);
  const auto f = sequence_fingerprint(torus_sequence(4));
  EXPECT_TRUE(f == fingerprint(d) || f == fingerprint(d).mirrored());
}

TEST(Diagram, JsonRoundTripAndValidation) {
  const auto d = sequence_to_pd(seq({1, 3, 5, 2, 7, 4, 6}));
  const auto back = diagram_from_json(nlohmann::json::parse(diagram_to_json(d).dump()));
  EXPECT_EQ(back.crossings(), d.crossings());
  EXPECT_THROW(PlanarDiagram({{1, 2, 3, 4}}), Error);
  EXPECT_THROW(diagram_from_json(nlohmann::json{{"crossings", {{1, 2, 3}}}}), Error);
}

TEST(Svg, DeterministicRose) {
  const auto t = seq({1, 3, 5, 2, 4});
  const auto a = render_svg(t);
  EXPECT_EQ(a, render_svg(t));
  EXPECT_NE(a.find("(1,3,5,2,4)"), std::string::npos);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n') > 5, true);
  const auto g = render_svg(petal_to_grid(t));
  EXPECT_NE(g.find("<svg"), std::string::npos);
  EXPECT_EQ(g, render_svg(petal_to_grid(t)));
}
