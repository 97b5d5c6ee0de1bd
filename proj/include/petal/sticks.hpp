#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "petal/error.hpp"
#include "petal/geometric.hpp"
#include "petal/laurent.hpp"
#include "petal/planar_diagram.hpp"
#include "petal/sequence.hpp"

namespace petal {

struct Point3 {
  Rational x, y, z;
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 cross3(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Rational dot3(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Closed polygon; vertex i joins vertex i+1 and the last joins the first.
struct StickConformation {
  std::vector<Point3> vertices;
  std::size_t segments() const noexcept { return vertices.size(); }
};

namespace detail {

inline bool is_zero3(const Point3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

// Do closed segments [a,b] and [c,d] share a point? Exact.
inline bool segments_meet(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Point3 u = b - a, v = d - c, w = c - a;
  const Point3 n = cross3(u, v);
  if (!is_zero3(n)) {
    if (dot3(w, n) != 0) return false;  // skew
    // Coplanar, not parallel: solve a + s u = c + t v.
    const Rational nn = dot3(n, n);
    const Rational s = dot3(cross3(w, v), n) / nn;
    const Rational t = dot3(cross3(w, u), n) / nn;
    return s >= 0 && s <= 1 && t >= 0 && t <= 1;
  }
  if (!is_zero3(cross3(w, u))) return false;  // parallel, distinct lines
  // Collinear: compare parameters along u.
  const Rational uu = dot3(u, u);
  Rational t0 = dot3(c - a, u) / uu, t1 = dot3(d - a, u) / uu;
  if (t0 > t1) std::swap(t0, t1);
  return t1 >= 0 && t0 <= 1;
}

}  // namespace detail

// Exact certificate: consecutive vertices distinct, no three consecutive
// collinear, and non-adjacent segments disjoint. Returns an explanation of the
// first failure, or an empty string.
inline std::string embedding_defect(const StickConformation& c) {
  const std::size_t n = c.vertices.size();
  if (n < 3) return "fewer than three vertices";
  auto at = [&](std::size_t i) -> const Point3& { return c.vertices[i % n]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i) == at(i + 1)) return "repeated vertex " + std::to_string(i);
    if (detail::is_zero3(cross3(at(i + 1) - at(i), at(i + 2) - at(i + 1))))
      return "collinear vertices at " + std::to_string(i + 1);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (detail::segments_meet(at(i), at(i + 1), at(j), at(j + 1)))
        return "segments " + std::to_string(i) + " and " + std::to_string(j) + " meet";
    }
  return {};
}

inline bool is_embedded(const StickConformation& c) { return embedding_defect(c).empty(); }

// Polygon for a petal sequence with at most 2(p-1) sticks.
//
// Base model: strand j is a horizontal stick at height a_j through the
// z-axis, between antipodal points of the unit circle, and consecutive strands
// are joined by chords between neighbouring circle points. Seen from above
// this is the petal projection. The top strand with its two chords lies above
// everything; it is replaced by tilting the two neighbouring strands upward
// past the circle and joining their raised ends by a single high stick.
inline StickConformation petal_to_sticks(const PetalSequence& s) {
  const int p = s.petals();
  if (p < 5) return {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  const Rational radius(2), lift(p);
  auto node = [p](int m) { return petal_node(p, m); };
  auto start_node = [p](int j) { return ((j % p) * (p + 1)) % (2 * p); };

  int top = 0;
  for (int j = 0; j < p; ++j)
    if (s[static_cast<std::size_t>(j)] == p) top = j;
  const int before = (top + p - 1) % p, after = (top + 1) % p;

  std::vector<Point3> v;
  v.reserve(static_cast<std::size_t>(2 * p - 2));
  // Walk strands after, after+1, ..., before; then one high stick closes up.
  for (int k = 0; k < p - 1; ++k) {
    const int j = (after + k) % p;
    const Rational h = s[static_cast<std::size_t>(j)];
    const Point2 a = node(start_node(j)), b = node(start_node(j) + p);
    if (j == after) {
      v.push_back({radius * a.x, radius * a.y, h + lift});
      v.push_back({b.x, b.y, h - lift / radius});
    } else if (j == before) {
      v.push_back({a.x, a.y, h - lift / radius});
      v.push_back({radius * b.x, radius * b.y, h + lift});
    } else {
      v.push_back({a.x, a.y, h});
      v.push_back({b.x, b.y, h});
    }
  }
  return {std::move(v)};
}

struct Direction3 {
  Rational x, y, z;
};

// Fixed sequence of rational viewing directions for retries.
inline std::vector<Direction3> default_directions() {
  return {{Rational(1, 7), Rational(2, 7), 1},    {Rational(-3, 11), Rational(1, 11), 1},
          {Rational(2, 13), Rational(-5, 13), 1}, {Rational(5, 17), Rational(3, 17), 1},
          {Rational(-4, 19), Rational(-7, 19), 1}, {Rational(7, 23), Rational(-2, 23), 1},
          {Rational(-1, 29), Rational(6, 29), 1},  {Rational(3, 31), Rational(8, 31), 1}};
}

// Parallel projection along `direction`, viewer at +infinity along it; the
// point nearer the viewer passes over.
inline PlanarDiagram project_to_pd(const StickConformation& c, const Direction3& direction) {
  const std::size_t n = c.vertices.size();
  const std::array<Rational, 3> d{direction.x, direction.y, direction.z};
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (abs(d[i]) > abs(d[k])) k = i;
  if (d[k] == 0) throw Error(ErrorKind::NonGenericDirection, "zero direction");
  const std::size_t i1 = (k + 1) % 3, i2 = (k + 2) % 3;
  const int flip = d[k] > 0 ? 1 : -1;

  struct Flat {
    Point2 q;
    Rational depth;
  };
  std::vector<Flat> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point3& v = c.vertices[i];
    const std::array<Rational, 3> x{v.x, v.y, v.z};
    const Rational lambda = x[k] / d[k];
    f[i] = {{x[i1] - lambda * d[i1], flip * (x[i2] - lambda * d[i2])}, lambda};
  }
  auto seg = [&](std::size_t i) { return std::pair<const Flat&, const Flat&>{f[i], f[(i + 1) % n]}; };
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = seg(i);
    if (a.q.x == b.q.x && a.q.y == b.q.y)
      throw Error(ErrorKind::NonGenericDirection, "segment " + std::to_string(i) + " projects to a point");
    const Point2 e = b.q - a.q, e2 = f[(i + 2) % n].q - b.q;
    if (cross(e, e2) == 0)
      throw Error(ErrorKind::NonGenericDirection, "consecutive segments project collinearly at " + std::to_string(i));
  }

  struct Hit {
    std::size_t seg;
    Rational t;
    int id;
    bool over;
  };
  std::vector<Hit> hits;
  std::vector<int> signs;
  std::vector<Point2> points;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      auto [a, b] = seg(i);
      auto [c2, d2] = seg(j);
      const Point2 u = b.q - a.q, v = d2.q - c2.q, w = c2.q - a.q;
      const Rational den = cross(u, v);
      if (den == 0) {
        if (cross(w, u) != 0 || adjacent) continue;
        // Collinear projections: generic only if disjoint.
        const Rational uu = u.x * u.x + u.y * u.y;
        Rational t0 = (w.x * u.x + w.y * u.y) / uu;
        Rational t1 = ((d2.q - a.q).x * u.x + (d2.q - a.q).y * u.y) / uu;
        if (t0 > t1) std::swap(t0, t1);
        if (t1 >= 0 && t0 <= 1) throw Error(ErrorKind::NonGenericDirection, "overlapping projected segments");
        continue;
      }
      const Rational s = cross(w, v) / den, t = cross(w, u) / den;
      if (s < 0 || s > 1 || t < 0 || t > 1) continue;
      const bool s_end = s == 0 || s == 1, t_end = t == 0 || t == 1;
      if (adjacent && s_end && t_end) continue;  // the shared vertex
      if (s_end || t_end) throw Error(ErrorKind::NonGenericDirection, "vertex projects onto a segment");
      const Rational zi = a.depth + s * (b.depth - a.depth);
      const Rational zj = c2.depth + t * (d2.depth - c2.depth);
      if (zi == zj) throw Error(ErrorKind::DegenerateGeometry, "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      const Point2 at{a.q.x + s * u.x, a.q.y + s * u.y};
      for (const auto& other : points)
        if (other.x == at.x && other.y == at.y) throw Error(ErrorKind::NonGenericDirection, "triple point");
      points.push_back(at);
      const int id = static_cast<int>(signs.size());
      const bool i_over = zi > zj;
      signs.push_back(sign_of(i_over ? cross(u, v) : cross(v, u)));
      hits.push_back({i, s, id, i_over});
      hits.push_back({j, t, id, !i_over});
    }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    return x.seg != y.seg ? x.seg < y.seg : x.t < y.t;
  });
  std::vector<CrossingPass> passes;
  passes.reserve(hits.size());
  for (const auto& h : hits) passes.push_back({h.id, h.over});
  return diagram_from_passes(passes, signs);
}

// Projects along the first direction of the default list that is generic.
inline PlanarDiagram project_generic(const StickConformation& c, std::size_t skip = 0) {
  const auto dirs = default_directions();
  for (std::size_t i = skip; i < dirs.size(); ++i) {
    try {
      return project_to_pd(c, dirs[i]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGenericDirection) throw;
    }
  }
  throw Error(ErrorKind::NonGenericDirection, "no generic direction among the defaults");
}

inline std::string rational_text(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in " + text);
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error& e) {
    if (const auto* pe = dynamic_cast<const Error*>(&e)) throw *pe;
    throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
  }
}

inline nlohmann::json sticks_to_json(const StickConformation& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : c.vertices) out.push_back({rational_text(v.x), rational_text(v.y), rational_text(v.z)});
  return out;
}

inline StickConformation sticks_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "conformation JSON must be an array");
  StickConformation c;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::ParseError, "each vertex needs three coordinates");
    c.vertices.push_back({parse_rational(v[0].get<std::string>()), parse_rational(v[1].get<std::string>()),
                          parse_rational(v[2].get<std::string>())});
  }
  return c;
}

}  // namespace petal
