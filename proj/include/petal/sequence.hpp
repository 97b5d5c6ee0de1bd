#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "petal/error.hpp"

namespace petal {

// Level sequence of a petal projection: the heights (1 = lowest) at which the
// knot passes through the central multi-crossing, in traversal order. Always
// an odd-length permutation of 1..p, read cyclically.
class PetalSequence {
 public:
  PetalSequence() : levels_{1} {}

  // Throws Empty, EvenLength or NotAPermutation.
  static PetalSequence validate(std::vector<int> levels) {
    if (levels.empty()) throw Error(ErrorKind::Empty, "sequence has no entries");
    if (levels.size() % 2 == 0)
      throw Error(ErrorKind::EvenLength,
                  "sequence length " + std::to_string(levels.size()) + " is even");
    const int p = static_cast<int>(levels.size());
    std::vector<bool> seen(static_cast<std::size_t>(p) + 1, false);
    for (int v : levels) {
      if (v < 1 || v > p)
        throw Error(ErrorKind::NotAPermutation,
                    "level " + std::to_string(v) + " outside 1.." + std::to_string(p));
      if (seen[static_cast<std::size_t>(v)])
        throw Error(ErrorKind::NotAPermutation, "level " + std::to_string(v) + " repeated");
      seen[static_cast<std::size_t>(v)] = true;
    }
    PetalSequence s;
    s.levels_ = std::move(levels);
    return s;
  }

  int petals() const noexcept { return static_cast<int>(levels_.size()); }
  std::span<const int> levels() const noexcept { return levels_; }
  int operator[](std::size_t i) const noexcept { return levels_[i]; }
  // Cyclic access.
  int at_cyclic(long long i) const noexcept {
    long long p = petals();
    return levels_[static_cast<std::size_t>(((i % p) + p) % p)];
  }

  friend bool operator==(const PetalSequence&, const PetalSequence&) = default;
  friend auto operator<=>(const PetalSequence& a, const PetalSequence& b) {
    return a.levels_ <=> b.levels_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(levels_[i]);
    }
    return out;
  }

 private:
  std::vector<int> levels_;
};

// Accepts whitespace- or comma-separated integers with optional parentheses.
inline PetalSequence parse_sequence(std::string_view text) {
  std::string cleaned(text);
  for (char& ch : cleaned)
    if (ch == ',' || ch == '(' || ch == ')' || ch == '[' || ch == ']') ch = ' ';
  std::istringstream is(cleaned);
  std::vector<int> levels;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(ErrorKind::ParseError, "not an integer: '" + tok + "'");
    levels.push_back(v);
  }
  return PetalSequence::validate(std::move(levels));
}

namespace detail {

inline std::vector<int> rotated(std::span<const int> v, std::size_t start) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[(start + i) % v.size()];
  return out;
}

// Order-preserving relabel onto 1..n.
inline std::vector<int> rank_relabel(const std::vector<int>& v) {
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin()) + 1;
  return out;
}

}  // namespace detail

// Least sequence over all cyclic rotations of s and of its reversal.
inline PetalSequence canonicalize(const PetalSequence& s) {
  auto lv = s.levels();
  std::vector<int> rev(lv.rbegin(), lv.rend());
  std::vector<int> best(lv.begin(), lv.end());
  for (std::size_t r = 0; r < lv.size(); ++r) {
    best = std::min(best, detail::rotated(lv, r));
    best = std::min(best, detail::rotated(rev, r));
  }
  return PetalSequence::validate(std::move(best));
}

inline bool is_canonical(const PetalSequence& s) { return canonicalize(s) == s; }

// Index i of the first cyclically adjacent pair (i, i+1) whose levels differ by one.
inline std::ptrdiff_t first_reducible_pair(std::span<const int> lv) {
  const std::size_t p = lv.size();
  if (p < 3) return -1;
  for (std::size_t i = 0; i < p; ++i) {
    int d = lv[i] - lv[(i + 1) % p];
    if (d == 1 || d == -1) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

inline bool is_reducible(const PetalSequence& s) { return first_reducible_pair(s.levels()) >= 0; }

// One loop removal: deletes the leftmost cyclically adjacent pair of
// consecutive levels and rank-relabels. Returns s unchanged if irreducible.
inline PetalSequence reduce_step(const PetalSequence& s) {
  auto lv = s.levels();
  std::ptrdiff_t i = first_reducible_pair(lv);
  if (i < 0) return s;
  std::size_t a = static_cast<std::size_t>(i);
  std::size_t b = (a + 1) % lv.size();
  std::vector<int> rest;
  rest.reserve(lv.size() - 2);
  for (std::size_t k = 0; k < lv.size(); ++k)
    if (k != a && k != b) rest.push_back(lv[k]);
  return PetalSequence::validate(detail::rank_relabel(rest));
}

// Removes loops formed by adjacent consecutive levels, leftmost pair first,
// until none remain. Preserves knot type; not a complete unknot detector.
inline PetalSequence reduce(const PetalSequence& s) {
  PetalSequence cur = s;
  while (is_reducible(cur)) cur = reduce_step(cur);
  return cur;
}

// Adds a removable loop: the consecutive pair (v, v+1) is inserted before
// index `position`, where v is the level currently at that index (the last
// level when position == p) and existing levels >= v move up by two.
inline PetalSequence stabilize(const PetalSequence& s, int position) {
  const int p = s.petals();
  if (position < 0 || position > p)
    throw Error(ErrorKind::IndexOutOfRange,
                "position " + std::to_string(position) + " outside 0.." + std::to_string(p));
  const int v = s[static_cast<std::size_t>(position < p ? position : p - 1)];
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p) + 2);
  for (int i = 0; i < p; ++i) {
    if (i == position) {
      out.push_back(v);
      out.push_back(v + 1);
    }
    int a = s[static_cast<std::size_t>(i)];
    out.push_back(a >= v ? a + 2 : a);
  }
  if (position == p) {
    out.push_back(v);
    out.push_back(v + 1);
  }
  return PetalSequence::validate(std::move(out));
}

// Level complement a -> p+1-a; represents the mirror image.
inline PetalSequence mirror(const PetalSequence& s) {
  const int p = s.petals();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int a : s.levels()) out.push_back(p + 1 - a);
  return PetalSequence::validate(std::move(out));
}

inline PetalSequence reversed(const PetalSequence& s) {
  std::vector<int> out(s.levels().rbegin(), s.levels().rend());
  return PetalSequence::validate(std::move(out));
}

// Connect sum by stacking pre-petal projections. Each input is rotated so
// its top strand comes first; the top strands are lifted off, the second
// knot's remaining strands are placed above the first's, and a single new
// top strand closes the composite. Length is m + n - 1.
inline PetalSequence compose(const PetalSequence& a, const PetalSequence& b) {
  const int m = a.petals();
  const int n = b.petals();
  auto from_top = [](const PetalSequence& s) {
    auto lv = s.levels();
    std::size_t top = static_cast<std::size_t>(std::max_element(lv.begin(), lv.end()) - lv.begin());
    std::vector<int> r = detail::rotated(lv, top);
    r.erase(r.begin());
    return r;
  };
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(m + n - 1));
  out.push_back(m + n - 1);
  for (int v : from_top(a)) out.push_back(v);
  for (int v : from_top(b)) out.push_back(v + m - 1);
  return PetalSequence::validate(std::move(out));
}

// Petal sequence of the (r, r+1) torus knot, up to mirror.
inline PetalSequence torus_sequence(int r) {
  if (r < 2) throw Error(ErrorKind::IndexOutOfRange, "torus parameter must be >= 2");
  const int p = 2 * r + 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) out.push_back(1 + (j * r) % p);
  return PetalSequence::validate(std::move(out));
}

// Uniform permutation of 1..p from a seeded Mersenne twister. The shuffle is
// an explicit Fisher-Yates so the output does not depend on the standard
// library's distribution implementation.
inline PetalSequence random_sequence(int p, std::uint64_t seed) {
  if (p < 1) throw Error(ErrorKind::Empty, "petal count must be positive");
  if (p % 2 == 0) throw Error(ErrorKind::EvenLength, "petal count " + std::to_string(p) + " is even");
  std::mt19937_64 rng(seed);
  std::vector<int> out(static_cast<std::size_t>(p));
  std::iota(out.begin(), out.end(), 1);
  for (std::size_t i = out.size(); i > 1; --i) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    std::swap(out[i - 1], out[static_cast<std::size_t>(x % bound)]);
  }
  return PetalSequence::validate(std::move(out));
}

}  // namespace petal
