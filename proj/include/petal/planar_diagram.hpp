#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "petal/error.hpp"

namespace petal {

// One crossing: arc labels listed counterclockwise starting from the
// incoming under-arc, so the under-strand runs slot 0 -> slot 2.
using Crossing = std::array<int, 4>;

// Oriented knot diagram in PD form. Arcs are labeled 1..2c consecutively
// along the orientation; an empty crossing list is the unknot.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;

  // Throws MalformedDiagram unless every label 1..2c appears exactly twice
  // and the labeling follows one closed orientation.
  explicit PlanarDiagram(std::vector<Crossing> crossings) : crossings_(std::move(crossings)) {
    check();
  }

  std::size_t size() const noexcept { return crossings_.size(); }
  bool empty() const noexcept { return crossings_.empty(); }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const Crossing& operator[](std::size_t i) const noexcept { return crossings_[i]; }
  int arc_count() const noexcept { return 2 * static_cast<int>(crossings_.size()); }

  int next_arc(int a) const noexcept { return a == arc_count() ? 1 : a + 1; }

  // Slot (1 or 3) holding the incoming over-arc of crossing i.
  int over_incoming_slot(std::size_t i) const noexcept {
    const Crossing& x = crossings_[i];
    if (crossings_.size() == 1) return x[1] == x[2] ? 1 : 3;
    return next_arc(x[1]) == x[3] ? 1 : 3;
  }

  // +1 when the over-strand runs from slot 3 to slot 1.
  int sign(std::size_t i) const noexcept { return over_incoming_slot(i) == 3 ? 1 : -1; }

  int writhe() const noexcept {
    int w = 0;
    for (std::size_t i = 0; i < crossings_.size(); ++i) w += sign(i);
    return w;
  }

  friend bool operator==(const PlanarDiagram&, const PlanarDiagram&) = default;

 private:
  void check() const {
    const int n = arc_count();
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& x : crossings_)
      for (int a : x) {
        if (a < 1 || a > n)
          throw Error(ErrorKind::MalformedDiagram,
                      "arc label " + std::to_string(a) + " outside 1.." + std::to_string(n));
        ++count[static_cast<std::size_t>(a)];
      }
    for (int a = 1; a <= n; ++a)
      if (count[static_cast<std::size_t>(a)] != 2)
        throw Error(ErrorKind::MalformedDiagram,
                    "arc " + std::to_string(a) + " appears " +
                        std::to_string(count[static_cast<std::size_t>(a)]) + " times");
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      const Crossing& x = crossings_[i];
      if (next_arc(x[0]) != x[2])
        throw Error(ErrorKind::MalformedDiagram,
                    "crossing " + std::to_string(i) + ": under-strand labels are not consecutive");
      if (next_arc(x[1]) != x[3] && next_arc(x[3]) != x[1])
        throw Error(ErrorKind::MalformedDiagram,
                    "crossing " + std::to_string(i) + ": over-strand labels are not consecutive");
    }
    // Consecutive labels along each strand plus the per-label count make the
    // arc successor map the single cycle 1 -> 2 -> ... -> 2c -> 1.
  }

  std::vector<Crossing> crossings_;
};

// One passage of the knot through a crossing while tracing its orientation.
struct CrossingPass {
  int crossing;
  bool over;
};

// Builds a PD from the ordered passes of a traversal. Each crossing id in
// 0..c-1 must be passed exactly twice, once over and once under; signs[id] is
// the crossing sign. The arc ending at passes[0] gets label 1.
inline PlanarDiagram diagram_from_passes(const std::vector<CrossingPass>& passes,
                                         const std::vector<int>& signs) {
  const std::size_t c = signs.size();
  if (passes.size() != 2 * c)
    throw Error(ErrorKind::MalformedDiagram, "pass count does not match crossing count");
  if (c == 0) return PlanarDiagram{};
  const int n = static_cast<int>(passes.size());
  // Arc t+1 ends at pass t and arc t+2 leaves it (mod n).
  auto arc_in = [](int t) { return t + 1; };
  auto arc_out = [n](int t) { return t + 1 == n ? 1 : t + 2; };
  std::vector<int> under(c, -1), over(c, -1);
  for (int t = 0; t < n; ++t) {
    const auto& ps = passes[static_cast<std::size_t>(t)];
    if (ps.crossing < 0 || static_cast<std::size_t>(ps.crossing) >= c)
      throw Error(ErrorKind::MalformedDiagram, "crossing id out of range");
    auto& slot = ps.over ? over[static_cast<std::size_t>(ps.crossing)]
                         : under[static_cast<std::size_t>(ps.crossing)];
    if (slot != -1) throw Error(ErrorKind::MalformedDiagram, "crossing passed twice the same way");
    slot = t;
  }
  std::vector<Crossing> xs(c);
  for (std::size_t i = 0; i < c; ++i) {
    int u = under[i], o = over[i];
    if (u < 0 || o < 0) throw Error(ErrorKind::MalformedDiagram, "crossing not passed over and under");
    if (signs[i] > 0)
      xs[i] = {arc_in(u), arc_out(o), arc_out(u), arc_in(o)};
    else
      xs[i] = {arc_in(u), arc_in(o), arc_out(u), arc_out(o)};
  }
  return PlanarDiagram(std::move(xs));
}

inline nlohmann::json diagram_to_json(const PlanarDiagram& d) {
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& x : d.crossings()) xs.push_back({x[0], x[1], x[2], x[3]});
  return {{"crossings", xs}};
}

inline PlanarDiagram diagram_from_json(const nlohmann::json& j) {
  const nlohmann::json& xs = j.is_object() ? j.at("crossings") : j;
  if (!xs.is_array()) throw Error(ErrorKind::ParseError, "PD JSON needs a crossings array");
  std::vector<Crossing> out;
  for (const auto& x : xs) {
    if (!x.is_array() || x.size() != 4)
      throw Error(ErrorKind::ParseError, "each crossing needs four arc labels");
    out.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
  }
  return PlanarDiagram(std::move(out));
}

}  // namespace petal
