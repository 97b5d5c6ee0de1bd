#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "petal/error.hpp"
#include "petal/planar_diagram.hpp"
#include "petal/sequence.hpp"

namespace petal {

// Square grid with one O and one X per row and per column. Column c (0-based
// index, 1-based rows) holds its O at o_row[c] and its X at x_row[c].
// Verticals run O -> X, horizontals X -> O, and verticals always cross over.
class GridDiagram {
 public:
  GridDiagram() = default;

  GridDiagram(std::vector<int> o_row, std::vector<int> x_row)
      : o_row_(std::move(o_row)), x_row_(std::move(x_row)) {
    check();
  }

  int size() const noexcept { return static_cast<int>(o_row_.size()); }
  const std::vector<int>& o_rows() const noexcept { return o_row_; }
  const std::vector<int>& x_rows() const noexcept { return x_row_; }

  // Column (0-based) whose O / X marker lies in the given 1-based row.
  int column_of_o(int row) const { return index_of(o_row_, row); }
  int column_of_x(int row) const { return index_of(x_row_, row); }

  friend bool operator==(const GridDiagram&, const GridDiagram&) = default;

 private:
  static int index_of(const std::vector<int>& v, int row) {
    auto it = std::find(v.begin(), v.end(), row);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  }

  void check() const {
    const std::size_t n = o_row_.size();
    if (n < 2) throw Error(ErrorKind::MalformedGrid, "grid size must be at least 2");
    if (x_row_.size() != n) throw Error(ErrorKind::MalformedGrid, "O and X arrays differ in length");
    auto is_perm = [n](const std::vector<int>& v) {
      std::vector<bool> seen(n + 1, false);
      for (int r : v) {
        if (r < 1 || static_cast<std::size_t>(r) > n || seen[static_cast<std::size_t>(r)]) return false;
        seen[static_cast<std::size_t>(r)] = true;
      }
      return true;
    };
    if (!is_perm(o_row_)) throw Error(ErrorKind::MalformedGrid, "O rows are not a permutation");
    if (!is_perm(x_row_)) throw Error(ErrorKind::MalformedGrid, "X rows are not a permutation");
    for (std::size_t c = 0; c < n; ++c)
      if (o_row_[c] == x_row_[c])
        throw Error(ErrorKind::MalformedGrid, "column " + std::to_string(c + 1) + " has O and X in one cell");
  }

  std::vector<int> o_row_, x_row_;
};

// Arc presentation of a petal projection: each petal becomes one page. The
// petal between strands j and j+1 sits in column 1 + ((j-1)k mod p) with
// k = (p+1)/2, holding O at level a_j and X at level a_{j+1}.
inline GridDiagram petal_to_grid(const PetalSequence& s) {
  const int p = s.petals();
  if (p == 1) return GridDiagram({1, 2}, {2, 1});
  if (p == 3) return GridDiagram({1, 2, 3}, {2, 3, 1});
  const int k = (p + 1) / 2;
  std::vector<int> o(static_cast<std::size_t>(p)), x(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    const std::size_t col = static_cast<std::size_t>((j * k) % p);
    o[col] = s[static_cast<std::size_t>(j)];
    x[col] = s.at_cyclic(j + 1);
  }
  return GridDiagram(std::move(o), std::move(x));
}

namespace detail {

struct GridSegment {
  bool vertical;
  int fixed;     // column (vertical) or row (horizontal), 1-based
  int from, to;  // rows (vertical) or columns (horizontal), 1-based
};

// Segments in traversal order, starting with the vertical whose O sits in row 1.
inline std::vector<GridSegment> grid_traversal(const GridDiagram& g) {
  const int n = g.size();
  std::vector<GridSegment> segs;
  int col = g.column_of_o(1);
  const int start = col;
  do {
    const int o = g.o_rows()[static_cast<std::size_t>(col)];
    const int x = g.x_rows()[static_cast<std::size_t>(col)];
    segs.push_back({true, col + 1, o, x});
    const int next = g.column_of_o(x);
    segs.push_back({false, x, col + 1, next + 1});
    col = next;
    if (segs.size() > 2 * static_cast<std::size_t>(n)) break;
  } while (col != start);
  if (segs.size() != 2 * static_cast<std::size_t>(n))
    throw Error(ErrorKind::MalformedGrid, "grid describes a link with more than one component");
  return segs;
}

inline bool strictly_between(int v, int a, int b) { return std::min(a, b) < v && v < std::max(a, b); }

}  // namespace detail

// Number of (vertical, horizontal) segment pairs whose interiors interleave,
// counted straight from the marker coordinates.
inline std::size_t grid_crossing_count(const GridDiagram& g) {
  const int n = g.size();
  std::size_t count = 0;
  for (int c = 0; c < n; ++c)
    for (int r = 1; r <= n; ++r) {
      const int vlo = g.o_rows()[static_cast<std::size_t>(c)], vhi = g.x_rows()[static_cast<std::size_t>(c)];
      const int h1 = g.column_of_x(r), h2 = g.column_of_o(r);
      if (detail::strictly_between(r, vlo, vhi) && detail::strictly_between(c, h1, h2)) ++count;
    }
  return count;
}

// Straight-segment drawing of the grid; every vertical passes over every
// horizontal it meets. Crossings are numbered in column-major sweep order.
inline PlanarDiagram grid_to_pd(const GridDiagram& g) {
  const auto segs = detail::grid_traversal(g);
  std::vector<const detail::GridSegment*> verticals, horizontals;
  for (const auto& s : segs) (s.vertical ? verticals : horizontals).push_back(&s);

  struct Hit {
    int column, row;
    int vdir, hdir;
  };
  std::vector<Hit> hits;
  for (const auto* v : verticals)
    for (const auto* h : horizontals)
      if (detail::strictly_between(h->fixed, v->from, v->to) && detail::strictly_between(v->fixed, h->from, h->to))
        hits.push_back({v->fixed, h->fixed, v->to > v->from ? 1 : -1, h->to > h->from ? 1 : -1});
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return std::tie(a.column, a.row) < std::tie(b.column, b.row); });

  const int n = g.size();
  std::vector<int> id_at(static_cast<std::size_t>((n + 1) * (n + 1)), -1);
  std::vector<int> signs;
  signs.reserve(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    id_at[static_cast<std::size_t>(hits[i].column * (n + 1) + hits[i].row)] = static_cast<int>(i);
    // Over = vertical (0, vdir), under = horizontal (hdir, 0): the sign is
    // that of cross(over, under) = -vdir * hdir.
    signs.push_back(hits[i].vdir * hits[i].hdir < 0 ? 1 : -1);
  }

  std::vector<CrossingPass> passes;
  passes.reserve(2 * hits.size());
  for (const auto& s : segs) {
    const int step = s.to > s.from ? 1 : -1;
    for (int v = s.from + step; v != s.to; v += step) {
      const int col = s.vertical ? s.fixed : v;
      const int row = s.vertical ? v : s.fixed;
      const int id = id_at[static_cast<std::size_t>(col * (n + 1) + row)];
      if (id < 0) continue;
      passes.push_back({id, s.vertical});
    }
  }
  return diagram_from_passes(passes, signs);
}

// Columns whose two horizontal neighbours leave toward opposite sides.
inline std::vector<int> inflection_columns(const GridDiagram& g) {
  std::vector<int> out;
  for (int c = 0; c < g.size(); ++c) {
    const int in_from = g.column_of_x(g.o_rows()[static_cast<std::size_t>(c)]);
    const int out_to = g.column_of_o(g.x_rows()[static_cast<std::size_t>(c)]);
    if ((in_from < c) != (out_to < c)) out.push_back(c + 1);
  }
  return out;
}

// Lengths (in columns) of the horizontal segments, indexed by row.
inline std::vector<int> horizontal_spans(const GridDiagram& g) {
  std::vector<int> out;
  for (int r = 1; r <= g.size(); ++r) out.push_back(std::abs(g.column_of_x(r) - g.column_of_o(r)));
  return out;
}

inline nlohmann::json grid_to_json(const GridDiagram& g) {
  return {{"size", g.size()}, {"o", g.o_rows()}, {"x", g.x_rows()}};
}

inline GridDiagram grid_from_json(const nlohmann::json& j) {
  try {
    auto o = j.at("o").get<std::vector<int>>();
    auto x = j.at("x").get<std::vector<int>>();
    if (j.contains("size") && j.at("size").get<int>() != static_cast<int>(o.size()))
      throw Error(ErrorKind::MalformedGrid, "size does not match marker arrays");
    return GridDiagram(std::move(o), std::move(x));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("grid JSON: ") + e.what());
  }
}

}  // namespace petal
