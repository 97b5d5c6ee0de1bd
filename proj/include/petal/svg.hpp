#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "petal/grid.hpp"
#include "petal/sequence.hpp"

namespace petal {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

inline std::string svg_header(int width, int height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
}

}  // namespace detail

// Petal rose: strand j is drawn as a diameter from angle s_j*pi/p, and each
// petal is a cubic arc joining neighbouring diameter ends outside the circle.
inline std::string render_svg(const PetalSequence& s) {
  using detail::fmt;
  const int p = s.petals();
  const double cx = 200, cy = 200, r = 110, bulge = 190;
  std::ostringstream os;
  os << detail::svg_header(400, 400);
  os << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  if (p == 1) {
    os << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n";
  } else {
    auto pt = [&](int m, double radius) {
      const double a = std::numbers::pi * m / p;
      return std::pair{cx + radius * std::cos(a), cy - radius * std::sin(a)};
    };
    std::ostringstream petals, strands;
    for (int j = 0; j < p; ++j) {
      const int start = (j * (p + 1)) % (2 * p);
      const int end = start + p;
      auto [x0, y0] = pt(start, r);
      auto [x1, y1] = pt(end, r);
      strands << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\"" << fmt(y1)
              << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
      auto [c0x, c0y] = pt(end, bulge);
      auto [c1x, c1y] = pt(end + 1, bulge);
      auto [x2, y2] = pt(end + 1, r);
      petals << "<path d=\"M " << fmt(x1) << " " << fmt(y1) << " C " << fmt(c0x) << " " << fmt(c0y) << " " << fmt(c1x)
             << " " << fmt(c1y) << " " << fmt(x2) << " " << fmt(y2)
             << "\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n";
      auto [lx, ly] = pt(start, r * 0.55);
      strands << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly)
              << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" fill=\"#b00\">"
              << s[static_cast<std::size_t>(j)] << "</text>\n";
    }
    os << petals.str() << strands.str();
    os << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
       << "\" r=\"6\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  std::string label = "(";
  for (int j = 0; j < p; ++j) label += (j ? "," : "") + std::to_string(s[static_cast<std::size_t>(j)]);
  label += ")";
  os << "<text x=\"200\" y=\"390\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << label
     << "</text>\n</svg>\n";
  return os.str();
}

// Grid with O / X markers; horizontals first, then verticals over a white halo.
inline std::string render_svg(const GridDiagram& g) {
  using detail::fmt;
  const int n = g.size();
  const double cell = 40, margin = 20;
  const int side = static_cast<int>(2 * margin + cell * n);
  auto cx = [&](int col) { return margin + cell * (col + 0.5); };       // 0-based column
  auto cy = [&](int row) { return margin + cell * (n - row + 0.5); };  // 1-based row, row 1 at the bottom
  std::ostringstream os;
  os << detail::svg_header(side, side);
  os << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"white\"/>\n";
  for (int k = 0; k <= n; ++k) {
    const double at = margin + cell * k;
    os << "<line x1=\"" << fmt(at) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(at) << "\" y2=\""
       << fmt(margin + cell * n) << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(at) << "\" x2=\"" << fmt(margin + cell * n) << "\" y2=\""
       << fmt(at) << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
  }
  for (int row = 1; row <= n; ++row) {
    const int a = g.column_of_x(row), b = g.column_of_o(row);
    os << "<line x1=\"" << fmt(cx(a)) << "\" y1=\"" << fmt(cy(row)) << "\" x2=\"" << fmt(cx(b)) << "\" y2=\""
       << fmt(cy(row)) << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  }
  for (int col = 0; col < n; ++col) {
    const int o = g.o_rows()[static_cast<std::size_t>(col)], x = g.x_rows()[static_cast<std::size_t>(col)];
    for (auto [colour, width] : {std::pair{"white", 9}, std::pair{"black", 3}})
      os << "<line x1=\"" << fmt(cx(col)) << "\" y1=\"" << fmt(cy(o)) << "\" x2=\"" << fmt(cx(col)) << "\" y2=\""
         << fmt(cy(x)) << "\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\"/>\n";
  }
  for (int col = 0; col < n; ++col) {
    const double x = cx(col);
    const double yo = cy(g.o_rows()[static_cast<std::size_t>(col)]);
    const double yx = cy(g.x_rows()[static_cast<std::size_t>(col)]);
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(yo)
       << "\" r=\"11\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
    os << "<path d=\"M " << fmt(x - 9) << " " << fmt(yx - 9) << " L " << fmt(x + 9) << " " << fmt(yx + 9) << " M "
       << fmt(x - 9) << " " << fmt(yx + 9) << " L " << fmt(x + 9) << " " << fmt(yx - 9)
       << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace petal
