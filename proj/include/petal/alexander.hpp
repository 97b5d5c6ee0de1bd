#pragma once

#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "petal/error.hpp"
#include "petal/laurent.hpp"
#include "petal/planar_diagram.hpp"

namespace petal {

namespace detail {

// Over-arcs of the diagram: PD edges glued across every over-pass.
inline std::vector<int> over_arc_of_edge(const PlanarDiagram& d, int& count) {
  const int n = d.arc_count();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  for (const auto& x : d.crossings()) parent[static_cast<std::size_t>(find(x[1]))] = find(x[3]);
  std::vector<int> id(static_cast<std::size_t>(n) + 1, -1), out(static_cast<std::size_t>(n) + 1, -1);
  count = 0;
  for (int a = 1; a <= n; ++a) {
    int r = find(a);
    if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = count++;
    out[static_cast<std::size_t>(a)] = id[static_cast<std::size_t>(r)];
  }
  return out;
}

template <typename C>
using SparseRow = std::map<int, LaurentPolynomial<C>>;

// Determinant up to a unit +-t^k. Pivots on unit entries whenever one exists
// (choosing the sparsest), otherwise does a fraction-free step and divides the
// accumulated multipliers out exactly at the end.
template <typename C>
LaurentPolynomial<C> determinant_up_to_unit(std::vector<SparseRow<C>> rows, int cols) {
  using Poly = LaurentPolynomial<C>;
  const std::size_t n = rows.size();
  if (n == 0) return Poly(C(1));
  std::vector<bool> row_done(n, false), col_done(static_cast<std::size_t>(cols), false);
  std::vector<int> col_count(static_cast<std::size_t>(cols), 0);
  for (const auto& r : rows)
    for (const auto& [c, v] : r) ++col_count[static_cast<std::size_t>(c)];

  Poly product(C(1)), divisor(C(1));
  for (std::size_t step = 0; step < n; ++step) {
    long best_cost = std::numeric_limits<long>::max();
    int br = -1, bc = -1;
    bool best_unit = false;
    for (std::size_t r = 0; r < n; ++r) {
      if (row_done[r]) continue;
      const long rc = static_cast<long>(rows[r].size());
      for (const auto& [c, v] : rows[r]) {
        const bool unit = v.is_monomial() && (v.dense()[0] == C(1) || v.dense()[0] == C(-1));
        const long cost = (rc - 1) * (col_count[static_cast<std::size_t>(c)] - 1) +
                          (unit ? 0 : 1000000L + static_cast<long>(v.dense().size()));
        if (cost < best_cost) {
          best_cost = cost;
          br = static_cast<int>(r);
          bc = c;
          best_unit = unit;
        }
      }
    }
    if (br < 0) return Poly{};  // singular
    const auto pr = static_cast<std::size_t>(br);
    row_done[pr] = true;
    col_done[static_cast<std::size_t>(bc)] = true;
    const SparseRow<C> pivot_row = rows[pr];
    const Poly pivot = pivot_row.at(bc);
    product *= pivot;
    for (const auto& [c, v] : pivot_row) --col_count[static_cast<std::size_t>(c)];

    for (std::size_t r = 0; r < n; ++r) {
      if (row_done[r]) continue;
      auto it = rows[r].find(bc);
      if (it == rows[r].end()) continue;
      const Poly factor = it->second;
      SparseRow<C>& row = rows[r];
      for (const auto& [c, v] : row) --col_count[static_cast<std::size_t>(c)];
      if (best_unit) {
        // row -= (factor / pivot) * pivot_row; pivot is +-t^k
        const Poly q = factor.shifted(-pivot.min_exponent()).scaled(pivot.dense()[0]);
        for (const auto& [c, v] : pivot_row) row[c] -= q * v;
      } else {
        for (auto& [c, v] : row) v = v * pivot;
        for (const auto& [c, v] : pivot_row) row[c] -= factor * v;
        divisor *= pivot;
      }
      std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
      for (const auto& [c, v] : row) ++col_count[static_cast<std::size_t>(c)];
    }
  }
  if (divisor.is_monomial() && (divisor.dense()[0] == C(1) || divisor.dense()[0] == C(-1))) return product;
  return product.divided_exactly(divisor);
}

template <typename C>
LaurentPolynomial<C> alexander_impl(const PlanarDiagram& d) {
  using Poly = LaurentPolynomial<C>;
  if (d.size() <= 1) return Poly(C(1));
  int gens = 0;
  const std::vector<int> arc = over_arc_of_edge(d, gens);
  const Poly one_minus_t = Poly::from_dense(0, {C(1), C(-1)});
  const Poly t = Poly::monomial(C(1), 1);
  const Poly minus_one(C(-1));
  std::vector<SparseRow<C>> rows;
  rows.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Crossing& x = d[i];
    SparseRow<C> row;
    const int over = arc[static_cast<std::size_t>(x[1])];
    const int in = arc[static_cast<std::size_t>(x[0])];
    const int out = arc[static_cast<std::size_t>(x[2])];
    const bool positive = d.sign(i) > 0;
    row[over] += one_minus_t;
    row[in] += positive ? t : minus_one;
    row[out] += positive ? minus_one : t;
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
    rows.push_back(std::move(row));
  }
  // First minor: drop the last relation and the last generator.
  rows.pop_back();
  const int cols = gens - 1;
  for (auto& r : rows) r.erase(cols);
  return determinant_up_to_unit<C>(std::move(rows), cols);
}

}  // namespace detail

// Centre the exponent range and fix the sign so that Delta(1) = 1.
inline Polynomial normalize_alexander(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::MalformedDiagram, "Alexander matrix is singular");
  const int span = p.min_exponent() + p.max_exponent();
  if (span % 2 != 0) throw Error(ErrorKind::MalformedDiagram, "Alexander polynomial has odd span");
  Polynomial out = p.shifted(-span / 2);
  const BigInt at_one = out.evaluate_unit(1);
  if (at_one == -1) out = -out;
  else if (at_one != 1) throw Error(ErrorKind::MalformedDiagram, "Alexander polynomial has |Delta(1)| != 1");
  return out;
}

// Wirtinger-matrix Alexander polynomial in canonical form.
inline Polynomial alexander(const PlanarDiagram& d) {
  Polynomial raw;
  try {
    raw = detail::alexander_impl<Checked128>(d).convert<BigInt>();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OverflowDetected) throw;
    raw = detail::alexander_impl<BigInt>(d);
  }
  return normalize_alexander(raw);
}

inline BigInt determinant_of(const Polynomial& alexander_poly) {
  BigInt v = alexander_poly.evaluate_unit(-1);
  return v < 0 ? BigInt(-v) : v;
}

inline BigInt determinant(const PlanarDiagram& d) { return determinant_of(alexander(d)); }

}  // namespace petal
