#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "petal/error.hpp"
#include "petal/planar_diagram.hpp"

namespace petal {

// Braid on `strands` strands; letter +i is the positive generator sigma_i
// (left strand passes over), -i its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;
};

inline BraidWord repeated(const BraidWord& w, int times) {
  BraidWord out{w.strands, {}};
  for (int i = 0; i < times; ++i) out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

// Closure of a braid as a PD, one crossing per letter. Braids are read
// bottom to top; the closing strands run down the right-hand side.
inline PlanarDiagram braid_to_pd(const BraidWord& w) {
  const int k = w.strands;
  if (k < 1) throw Error(ErrorKind::MalformedDiagram, "braid needs at least one strand");
  for (int l : w.letters)
    if (l == 0 || std::abs(l) >= k)
      throw Error(ErrorKind::MalformedDiagram, "braid letter " + std::to_string(l) + " invalid on " +
                                                   std::to_string(k) + " strands");
  // Underlying permutation must be a single k-cycle.
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : w.letters) {
    std::size_t g = static_cast<std::size_t>(std::abs(l));
    std::swap(perm[g - 1], perm[g]);
  }
  // perm[pos] = strand that ends at pos; follow where position 0 goes.
  std::vector<int> where(static_cast<std::size_t>(k));
  for (int pos = 0; pos < k; ++pos) where[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] = pos;
  int pos = 0, cycle = 0;
  do {
    pos = where[static_cast<std::size_t>(pos)];
    ++cycle;
  } while (pos != 0);
  if (cycle != k)
    throw Error(ErrorKind::MultiComponentClosure,
                "braid closure has more than one component (cycle length " + std::to_string(cycle) + " of " +
                    std::to_string(k) + ")");

  std::vector<int> signs;
  signs.reserve(w.letters.size());
  for (int l : w.letters) signs.push_back(l > 0 ? 1 : -1);
  std::vector<CrossingPass> passes;
  passes.reserve(2 * w.letters.size());
  pos = 0;
  for (int round = 0; round < k; ++round) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      const int l = w.letters[i];
      const int left = std::abs(l) - 1;
      if (pos != left && pos != left + 1) continue;
      const bool from_left = pos == left;
      passes.push_back({static_cast<int>(i), l > 0 ? from_left : !from_left});
      pos = from_left ? left + 1 : left;
    }
  }
  return diagram_from_passes(passes, signs);
}

}  // namespace petal
