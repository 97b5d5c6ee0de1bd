#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "petal/error.hpp"
#include "petal/planar_diagram.hpp"
#include "petal/sequence.hpp"

namespace petal {

using Rational = boost::multiprecision::cpp_rational;

struct Point2 {
  Rational x, y;
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(const Rational& k, const Point2& a) { return {k * a.x, k * a.y}; }
inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

inline int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Rational point near angle m*pi/p on the unit circle, for m in 0..2p-1.
// Antipodal nodes are exact negatives of each other, and the 2p points are in
// strictly convex position.
inline Point2 petal_node(int p, int m) {
  m = ((m % (2 * p)) + 2 * p) % (2 * p);
  const bool flip = m >= p;
  const int base = flip ? m - p : m;
  constexpr long long kScale = 1LL << 20;
  const double angle = std::numbers::pi * base / p;
  Point2 q{Rational(std::llround(std::cos(angle) * kScale), kScale),
           Rational(std::llround(std::sin(angle) * kScale), kScale)};
  if (flip) {
    q.x = -q.x;
    q.y = -q.y;
  }
  return q;
}

// Combinatorial skeleton shared by every sequence of one length: for each
// strand the strands it meets in order of travel, and the orientation of
// each strand pair.
struct PetalArrangement {
  int petals = 0;
  std::vector<std::vector<int>> meets;        // meets[j] = strands crossed by strand j, in order
  std::vector<std::vector<int>> orientation;  // sign of cross(dir_i, dir_j)
  std::vector<std::vector<int>> crossing_id;  // symmetric, -1 on the diagonal
};

namespace detail {

inline PetalArrangement build_arrangement(int p) {
  PetalArrangement arr;
  arr.petals = p;
  const std::size_t n = static_cast<std::size_t>(p);
  const Rational delta(1, 64 * p * p);
  std::vector<Point2> start(n), dir(n);
  for (int j = 0; j < p; ++j) {
    const int s = (j * (p + 1)) % (2 * p);
    Point2 a = petal_node(p, s), b = petal_node(p, s + p);
    Point2 d = b - a;
    Point2 normal{-d.y, d.x};
    Point2 shift = (delta * (j + 1)) * normal;
    start[static_cast<std::size_t>(j)] = a + shift;
    dir[static_cast<std::size_t>(j)] = d;
  }
  arr.meets.assign(n, {});
  arr.orientation.assign(n, std::vector<int>(n, 0));
  arr.crossing_id.assign(n, std::vector<int>(n, -1));
  std::vector<std::vector<std::pair<Rational, int>>> hits(n);
  std::vector<std::pair<Rational, std::pair<int, int>>> by_x;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const auto& di = dir[static_cast<std::size_t>(i)];
      const auto& dj = dir[static_cast<std::size_t>(j)];
      Rational den = cross(di, dj);
      if (den == 0) throw Error(ErrorKind::DegenerateGeometry, "parallel strands");
      Point2 w = start[static_cast<std::size_t>(j)] - start[static_cast<std::size_t>(i)];
      Rational ti = cross(w, dj) / den;
      Rational tj = cross(w, di) / den;
      if (ti <= 0 || ti >= 1 || tj <= 0 || tj >= 1)
        throw Error(ErrorKind::DegenerateGeometry, "strand intersection outside the disc");
      hits[static_cast<std::size_t>(i)].emplace_back(ti, j);
      hits[static_cast<std::size_t>(j)].emplace_back(tj, i);
      arr.orientation[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sign_of(den);
      arr.orientation[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -sign_of(den);
      Point2 at = start[static_cast<std::size_t>(i)] + ti * di;
      by_x.push_back({at.x, {i, j}});
    }
  for (std::size_t j = 0; j < n; ++j) {
    auto& h = hits[j];
    std::sort(h.begin(), h.end());
    for (std::size_t k = 1; k < h.size(); ++k)
      if (h[k].first == h[k - 1].first)
        throw Error(ErrorKind::DegenerateGeometry, "three strands through one point");
    for (auto& [t, other] : h) arr.meets[j].push_back(other);
  }
  std::sort(by_x.begin(), by_x.end());
  for (std::size_t k = 0; k < by_x.size(); ++k) {
    auto [i, j] = by_x[k].second;
    arr.crossing_id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(k);
    arr.crossing_id[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = static_cast<int>(k);
  }
  return arr;
}

}  // namespace detail

// Cached per petal count; safe to call concurrently.
inline const PetalArrangement& petal_arrangement(int p) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PetalArrangement>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<PetalArrangement>(detail::build_arrangement(p));
  return *slot;
}

// Second conversion route, independent of the grid: the petal rose drawn
// with straight strands through a slightly perturbed centre, so the
// multi-crossing splits into p(p-1)/2 ordinary crossings. Higher level wins.
inline PlanarDiagram petal_to_pd_geometric(const PetalSequence& s) {
  const int p = s.petals();
  if (p == 1) return PlanarDiagram{};
  const PetalArrangement& arr = petal_arrangement(p);
  const std::size_t c = static_cast<std::size_t>(p * (p - 1) / 2);
  std::vector<int> signs(c, 0);
  std::vector<CrossingPass> passes;
  passes.reserve(2 * c);
  for (int j = 0; j < p; ++j) {
    const int level = s[static_cast<std::size_t>(j)];
    for (int other : arr.meets[static_cast<std::size_t>(j)]) {
      const int id = arr.crossing_id[static_cast<std::size_t>(j)][static_cast<std::size_t>(other)];
      const bool over = level > s[static_cast<std::size_t>(other)];
      passes.push_back({id, over});
      if (over) signs[static_cast<std::size_t>(id)] = arr.orientation[static_cast<std::size_t>(j)][static_cast<std::size_t>(other)];
    }
  }
  return diagram_from_passes(passes, signs);
}

}  // namespace petal
