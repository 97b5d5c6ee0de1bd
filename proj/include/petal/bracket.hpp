#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "petal/error.hpp"
#include "petal/laurent.hpp"
#include "petal/planar_diagram.hpp"

namespace petal {

enum class Arithmetic {
  Exact,      // arbitrary precision
  Checked128  // 128-bit with hard failure on overflow
};

struct BracketOptions {
  Arithmetic arithmetic = Arithmetic::Exact;
  std::size_t max_boundary = 24;  // open endpoints allowed during contraction
};

namespace detail {

// Smoothing of crossing (a,b,c,d): the A-smoothing joins a-b and c-d, the
// A^-1 smoothing joins a-d and b-c.
constexpr std::array<std::array<int, 4>, 2> kSmoothingPartner{{
    {1, 0, 3, 2},  // A
    {3, 2, 1, 0},  // A^-1
}};

template <typename C>
LaurentPolynomial<C> loop_value() {
  // delta = -A^2 - A^-2
  return LaurentPolynomial<C>::from_dense(-2, {C(-1), C(0), C(0), C(0), C(-1)});
}

// Greedy contraction order: start at crossing 0, then repeatedly take the
// crossing sharing the most arcs with the open boundary (lowest index on ties).
inline std::vector<std::size_t> contraction_order(const PlanarDiagram& d) {
  const std::size_t c = d.size();
  std::vector<std::size_t> order;
  if (c == 0) return order;
  const int n = d.arc_count();
  std::vector<std::array<int, 2>> owners(static_cast<std::size_t>(n) + 1, {-1, -1});
  for (std::size_t i = 0; i < c; ++i)
    for (int a : d[i]) {
      auto& o = owners[static_cast<std::size_t>(a)];
      (o[0] == -1 ? o[0] : o[1]) = static_cast<int>(i);
    }
  std::vector<int> shared(c, 0);
  std::vector<bool> done(c, false);
  order.reserve(c);
  std::size_t next = 0;
  for (std::size_t step = 0; step < c; ++step) {
    if (step > 0) {
      int best = -1;
      for (std::size_t i = 0; i < c; ++i)
        if (!done[i] && shared[i] > best) {
          best = shared[i];
          next = i;
        }
    }
    done[next] = true;
    order.push_back(next);
    for (int a : d[next])
      for (int o : owners[static_cast<std::size_t>(a)])
        if (o >= 0 && !done[static_cast<std::size_t>(o)]) ++shared[static_cast<std::size_t>(o)];
  }
  return order;
}

template <typename C>
LaurentPolynomial<C> bracket_contract(const PlanarDiagram& d, std::size_t max_boundary) {
  using Poly = LaurentPolynomial<C>;
  if (d.empty()) return Poly(C(1));

  const std::vector<std::size_t> order = contraction_order(d);
  const Poly delta = loop_value<C>();
  std::vector<Poly> delta_pow{Poly(C(1))};
  auto delta_power = [&](std::size_t k) -> const Poly& {
    while (delta_pow.size() <= k) delta_pow.push_back(delta_pow.back() * delta);
    return delta_pow[k];
  };
  const Poly weight[2] = {Poly::monomial(C(1), 1), Poly::monomial(C(1), -1)};

  // A state is a perfect matching on the boundary, stored as partner indices.
  std::vector<int> boundary;
  std::unordered_map<std::string, Poly> states;
  states.emplace(std::string(), Poly(C(1)));

  std::vector<int> glue, open_index;
  std::vector<char> visited;
  std::string key;

  for (std::size_t step = 0; step < order.size(); ++step) {
    const Crossing& x = d[order[step]];
    const int nb = static_cast<int>(boundary.size());
    const int ports = nb + 4;

    // Glue ports that carry the same arc label.
    glue.assign(static_cast<std::size_t>(ports), -1);
    auto port_label = [&](int port) { return port < nb ? boundary[static_cast<std::size_t>(port)] : x[static_cast<std::size_t>(port - nb)]; };
    for (int s = 0; s < 4; ++s) {
      const int ps = nb + s;
      if (glue[static_cast<std::size_t>(ps)] != -1) continue;
      auto it = std::lower_bound(boundary.begin(), boundary.end(), x[static_cast<std::size_t>(s)]);
      if (it != boundary.end() && *it == x[static_cast<std::size_t>(s)]) {
        int pb = static_cast<int>(it - boundary.begin());
        glue[static_cast<std::size_t>(ps)] = pb;
        glue[static_cast<std::size_t>(pb)] = ps;
        continue;
      }
      for (int t = s + 1; t < 4; ++t)
        if (x[static_cast<std::size_t>(t)] == x[static_cast<std::size_t>(s)]) {
          glue[static_cast<std::size_t>(ps)] = nb + t;
          glue[static_cast<std::size_t>(nb + t)] = ps;
        }
    }
    std::vector<std::pair<int, int>> open_ports;  // (label, port)
    for (int p = 0; p < ports; ++p)
      if (glue[static_cast<std::size_t>(p)] == -1) open_ports.emplace_back(port_label(p), p);
    std::sort(open_ports.begin(), open_ports.end());
    if (open_ports.size() > max_boundary)
      throw Error(ErrorKind::StateSpaceTooLarge,
                  "contraction boundary reached " + std::to_string(open_ports.size()) +
                      " endpoints (cap " + std::to_string(max_boundary) + ")");
    open_index.assign(static_cast<std::size_t>(ports), -1);
    std::vector<int> next_boundary;
    for (std::size_t k = 0; k < open_ports.size(); ++k) {
      open_index[static_cast<std::size_t>(open_ports[k].second)] = static_cast<int>(k);
      next_boundary.push_back(open_ports[k].first);
    }
    const bool last = step + 1 == order.size();

    std::unordered_map<std::string, Poly> next_states;
    next_states.reserve(states.size() * 2);
    for (const auto& [state, value] : states) {
      for (int smoothing = 0; smoothing < 2; ++smoothing) {
        const auto& cp = kSmoothingPartner[static_cast<std::size_t>(smoothing)];
        auto strand = [&](int p) {
          return p < nb ? static_cast<int>(static_cast<unsigned char>(state[static_cast<std::size_t>(p)]))
                        : nb + cp[static_cast<std::size_t>(p - nb)];
        };
        visited.assign(static_cast<std::size_t>(ports), 0);
        key.assign(next_boundary.size(), '\0');
        for (const auto& [label, start] : open_ports) {
          if (visited[static_cast<std::size_t>(start)]) continue;
          int p = start;
          for (;;) {
            visited[static_cast<std::size_t>(p)] = 1;
            int q = strand(p);
            visited[static_cast<std::size_t>(q)] = 1;
            int g = glue[static_cast<std::size_t>(q)];
            if (g == -1) {
              key[static_cast<std::size_t>(open_index[static_cast<std::size_t>(start)])] =
                  static_cast<char>(open_index[static_cast<std::size_t>(q)]);
              key[static_cast<std::size_t>(open_index[static_cast<std::size_t>(q)])] =
                  static_cast<char>(open_index[static_cast<std::size_t>(start)]);
              break;
            }
            p = g;
          }
        }
        std::size_t loops = 0;
        for (int s = 0; s < ports; ++s) {
          if (visited[static_cast<std::size_t>(s)]) continue;
          ++loops;
          int p = s;
          while (!visited[static_cast<std::size_t>(p)]) {
            visited[static_cast<std::size_t>(p)] = 1;
            int q = strand(p);
            visited[static_cast<std::size_t>(q)] = 1;
            p = glue[static_cast<std::size_t>(q)];
          }
        }
        // The final closed component is the normalizing unknot.
        if (last && loops > 0) --loops;
        Poly term = value * weight[smoothing];
        if (loops > 0) term = term * delta_power(loops);
        auto [it, inserted] = next_states.try_emplace(key, term);
        if (!inserted) it->second += term;
      }
    }
    std::erase_if(next_states, [](const auto& kv) { return kv.second.is_zero(); });
    states = std::move(next_states);
    boundary = std::move(next_boundary);
  }
  if (states.empty()) return Poly{};
  return states.begin()->second;
}

}  // namespace detail

// Kauffman bracket by tangle contraction: crossings are absorbed one at a
// time while a vector of boundary matchings carries the partial state sum.
// Normalized so the crossingless unknot is 1.
inline Polynomial kauffman_bracket(const PlanarDiagram& d, const BracketOptions& opts = {}) {
  if (opts.arithmetic == Arithmetic::Checked128)
    return detail::bracket_contract<Checked128>(d, opts.max_boundary).convert<BigInt>();
  return detail::bracket_contract<BigInt>(d, opts.max_boundary);
}

// Full 2^c state sum with union-find loop counting. Independent of the
// contraction engine; used as its oracle.
inline Polynomial bracket_bruteforce(const PlanarDiagram& d) {
  const std::size_t c = d.size();
  if (c > 16)
    throw Error(ErrorKind::TooManyCrossings,
                std::to_string(c) + " crossings exceed the brute-force limit of 16");
  if (c == 0) return Polynomial(BigInt(1));
  const int n = d.arc_count();
  // tally[a_count][loops]
  std::vector<std::vector<long long>> tally(c + 1, std::vector<long long>(static_cast<std::size_t>(n) + 2, 0));
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    std::iota(parent.begin(), parent.end(), 0);
    int components = n;
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    };
    std::size_t a_count = 0;
    for (std::size_t i = 0; i < c; ++i) {
      const Crossing& x = d[i];
      if (mask & (1u << i)) {
        unite(x[0], x[3]);
        unite(x[1], x[2]);
      } else {
        ++a_count;
        unite(x[0], x[1]);
        unite(x[2], x[3]);
      }
    }
    ++tally[a_count][static_cast<std::size_t>(components)];
  }
  const Polynomial delta = detail::loop_value<BigInt>();
  std::vector<Polynomial> delta_pow{Polynomial(BigInt(1))};
  Polynomial total;
  for (std::size_t a = 0; a <= c; ++a)
    for (std::size_t loops = 1; loops < tally[a].size(); ++loops) {
      if (tally[a][loops] == 0) continue;
      while (delta_pow.size() < loops) delta_pow.push_back(delta_pow.back() * delta);
      const int exponent = static_cast<int>(a) - static_cast<int>(c - a);
      total += delta_pow[loops - 1].shifted(exponent).scaled(BigInt(tally[a][loops]));
    }
  return total;
}

inline int writhe(const PlanarDiagram& d) { return d.writhe(); }

// V(t) = (-A^3)^(-w) <D> evaluated at A = t^(-1/4).
inline Polynomial jones_from_bracket(const Polynomial& bracket, int writhe_value) {
  Polynomial normalized = bracket.shifted(-3 * writhe_value);
  if (writhe_value % 2 != 0) normalized = -normalized;
  return normalized.rescaled(-1, 4);
}

inline Polynomial jones(const PlanarDiagram& d, const BracketOptions& opts = {}) {
  return jones_from_bracket(kauffman_bracket(d, opts), d.writhe());
}

// Fast path with automatic fallback to exact arithmetic on overflow.
inline Polynomial jones_fast(const PlanarDiagram& d, std::size_t max_boundary = 24) {
  try {
    return jones(d, {Arithmetic::Checked128, max_boundary});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OverflowDetected) throw;
  }
  return jones(d, {Arithmetic::Exact, max_boundary});
}

}  // namespace petal
