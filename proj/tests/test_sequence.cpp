#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "petal/petal.hpp"

using namespace petal;

namespace {

PetalSequence seq(std::vector<int> v) { return PetalSequence::validate(std::move(v)); }

// Orbit under rotation and reversal, written out longhand.
std::vector<std::vector<int>> orbit(const std::vector<int>& v) {
  std::vector<std::vector<int>> out;
  const std::size_t n = v.size();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<int> fwd, back;
    for (std::size_t i = 0; i < n; ++i) {
      fwd.push_back(v[(r + i) % n]);
      back.push_back(v[(r + n - i) % n]);
    }
    out.push_back(fwd);
    out.push_back(back);
  }
  return out;
}

Fingerprint fp(const PetalSequence& s) { return sequence_fingerprint(s); }

}  // namespace

TEST(Validate, AcceptsOddPermutations) {
  auto s = seq({1, 3, 5, 2, 4});
  EXPECT_EQ(s.petals(), 5);
  EXPECT_EQ(s.to_string(), "1 3 5 2 4");
  EXPECT_EQ(seq({1}).petals(), 1);
}

TEST(Validate, RejectsBadInput) {
  auto kind_of = [](std::vector<int> v) {
    try {
      PetalSequence::validate(std::move(v));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind_of({1, 3, 2, 4}), ErrorKind::EvenLength);
  EXPECT_EQ(kind_of({1, 2, 2}), ErrorKind::NotAPermutation);
  EXPECT_EQ(kind_of({1, 2, 7}), ErrorKind::NotAPermutation);
  EXPECT_EQ(kind_of({}), ErrorKind::Empty);
}

TEST(Parse, AcceptsCommasAndParentheses) {
  EXPECT_EQ(parse_sequence("(1, 3,5 ,2,4)"), seq({1, 3, 5, 2, 4}));
  EXPECT_EQ(parse_sequence("  1 3 2 "), seq({1, 3, 2}));
  EXPECT_THROW(parse_sequence("1 x 2"), Error);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(seq({3, 5, 2, 4, 1})), seq({1, 3, 5, 2, 4}));
  EXPECT_EQ(canonicalize(seq({1})), seq({1}));
}

TEST(Canonicalize, IsOrbitMinimumAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int p = 1 + 2 * static_cast<int>(seed % 6);
    const auto s = random_sequence(p, seed);
    const auto members = orbit(std::vector<int>(s.levels().begin(), s.levels().end()));
    const auto least = *std::min_element(members.begin(), members.end());
    const auto c = canonicalize(s);
    EXPECT_EQ(std::vector<int>(c.levels().begin(), c.levels().end()), least);
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_TRUE(is_canonical(c));
  }
}

TEST(Reduce, Examples) {
  EXPECT_EQ(reduce(seq({1, 3, 2})), seq({1}));
  const auto unknot = seq({1, 9, 3, 5, 7, 10, 2, 4, 8, 11, 6});
  EXPECT_FALSE(is_reducible(unknot));
  EXPECT_EQ(reduce(unknot), unknot);
  // One removal step, before any canonicalization.
  EXPECT_EQ(reduce_step(seq({1, 2, 5, 3, 7, 4, 6})), seq({3, 1, 5, 2, 4}));
  EXPECT_EQ(fp(seq({1, 2, 5, 3, 7, 4, 6})), fp(seq({3, 1, 5, 2, 4})));
}

TEST(Reduce, WrapsAroundCyclically) {
  // Only the pair (last, first) differs by one.
  const auto s = seq({2, 4, 1, 5, 3});
  EXPECT_TRUE(is_reducible(s));
  EXPECT_EQ(reduce_step(s), seq({2, 1, 3}));
}

TEST(Reduce, LeftmostPairFirst) {
  // Both (5,4) and (1,2) are removable; the scan removes the earlier pair.
  EXPECT_EQ(reduce_step(seq({3, 5, 4, 1, 2})), seq({3, 1, 2}));
}

TEST(Stabilize, RoundTripsAndPreservesKnot) {
  const auto s1 = stabilize(seq({1}), 0);
  EXPECT_EQ(s1.petals(), 3);
  EXPECT_EQ(reduce(s1), seq({1}));
  const auto t = seq({1, 3, 5, 2, 4});
  const auto jt = fp(t).jones;
  for (int k = 0; k <= 5; ++k) {
    const auto st = stabilize(t, k);
    EXPECT_EQ(st.petals(), 7);
    EXPECT_EQ(fp(st).jones, jt) << "position " << k;
  }
  EXPECT_THROW(stabilize(t, 6), Error);
  EXPECT_THROW(stabilize(t, -1), Error);
}

TEST(Stabilize, ReduceNeverLengthens) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int p = 1 + 2 * static_cast<int>(seed % 5);
    const auto s = random_sequence(p, seed + 1000);
    const int k = static_cast<int>(seed % static_cast<std::uint64_t>(p + 1));
    EXPECT_LE(reduce(stabilize(s, k)).petals(), p);
  }
}

TEST(Mirror, ComplementAndInvolution) {
  EXPECT_EQ(mirror(seq({1})), seq({1}));
  EXPECT_EQ(mirror(seq({1, 3, 5, 2, 4})), seq({5, 3, 1, 4, 2}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_sequence(7, seed);
    EXPECT_EQ(mirror(mirror(s)), s);
    EXPECT_EQ(fp(mirror(s)).jones, fp(s).jones.reflected());
  }
}

TEST(Mirror, FigureEightIsAmphichiral) {
  const auto s = seq({1, 3, 5, 2, 7, 4, 6});
  EXPECT_EQ(fp(mirror(s)), fp(s));
  EXPECT_EQ(fp(s).jones, fp(s).jones.reflected());
}

TEST(Reversal, ActsAsMirror) {
  // Reading a petal sequence backwards reverses orientation and, through the
  // symmetry of the rose, mirrors the knot: chiral knots swap chirality.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_sequence(9, seed);
    EXPECT_EQ(fp(reversed(s)).jones, fp(s).jones.reflected());
  }
}

TEST(Compose, IdentityAndProducts) {
  const auto t = seq({1, 3, 5, 2, 4});
  const auto ft = fp(t);
  const auto id = compose(seq({1}), t);
  EXPECT_EQ(id.petals(), 5);
  EXPECT_EQ(fp(id), ft);
  const auto granny = compose(t, t);
  EXPECT_EQ(granny.petals(), 9);
  EXPECT_EQ(fp(granny).jones, ft.jones * ft.jones);
  const auto square = compose(t, mirror(t));
  EXPECT_EQ(square.petals(), 9);
  EXPECT_EQ(fp(square).jones, ft.jones * ft.jones.reflected());
}

TEST(Compose, FingerprintMultiplies) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto a = random_sequence(5 + 2 * static_cast<int>(seed % 2), seed);
    const auto b = random_sequence(5, seed + 77);
    const auto c = compose(a, b);
    EXPECT_EQ(c.petals(), a.petals() + b.petals() - 1);
    const auto fa = fp(a), fb = fp(b), fc = fp(c);
    EXPECT_EQ(fc.jones, fa.jones * fb.jones);
    EXPECT_EQ(fc.alexander, fa.alexander * fb.alexander);
  }
}

TEST(Torus, Examples) {
  EXPECT_EQ(torus_sequence(2), seq({1, 3, 5, 2, 4}));
  EXPECT_EQ(torus_sequence(3), seq({1, 4, 7, 3, 6, 2, 5}));
  EXPECT_EQ(torus_sequence(4), seq({1, 5, 9, 4, 8, 3, 7, 2, 6}));
  EXPECT_THROW(torus_sequence(1), Error);
}

TEST(Random, DeterministicAndValid) {
  EXPECT_EQ(random_sequence(1, 42), seq({1}));
  EXPECT_EQ(random_sequence(5, 9), random_sequence(5, 9));
  EXPECT_THROW(random_sequence(4, 1), Error);
}

TEST(Random, UniformOverPermutations) {
  // 120 cells, 1e5 draws: each count within 4 sigma and chi-square sane.
  std::map<std::vector<int>, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto s = random_sequence(5, static_cast<std::uint64_t>(i));
    ++counts[std::vector<int>(s.levels().begin(), s.levels().end())];
  }
  ASSERT_EQ(counts.size(), 120u);
  const double expected = draws / 120.0;
  const double sigma = std::sqrt(expected * (1 - 1 / 120.0));
  double chi2 = 0;
  for (const auto& [perm, c] : counts) {
    EXPECT_LT(std::abs(c - expected), 4 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 119 degrees of freedom; the 99.99th percentile is 185.1.
  EXPECT_LT(chi2, 185.1);
}

TEST(SmallSequences, AreUnknots) {
  for (const auto& s : {seq({1}), seq({1, 2, 3}), seq({1, 3, 2}), seq({2, 1, 3})})
    EXPECT_EQ(fp(s), unknot_fingerprint());
}
