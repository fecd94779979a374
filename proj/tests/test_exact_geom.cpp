#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "coxref/catalog.hpp"
#include "coxref/reflections.hpp"
#include "coxref/tits.hpp"

using namespace coxref;

namespace {

TitsRepresentation rep(const char* text) { return TitsRepresentation(parse_coxeter_matrix(text)); }

Word random_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> g(0, rank - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(g(rng));
  return w;
}

// Oracle: the matrices w s w⁻¹ for every word w of length <= depth.
std::set<std::string> conjugate_keys(const TitsRepresentation& r, int depth) {
  std::set<std::string> out;
  std::vector<Word> frontier{{}};
  std::vector<Word> all{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int s = 0; s < r.rank(); ++s) {
        Word v = w;
        v.push_back(s);
        next.push_back(v);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& w : all)
    for (int s = 0; s < r.rank(); ++s) {
      Word c = w;
      c.push_back(s);
      c.insert(c.end(), w.rbegin(), w.rend());
      out.insert(canonical_key(r.evaluate(c)));
    }
  return out;
}

// Oracle: Cayley-graph distances by breadth-first search over matrices.
std::map<std::string, int> cayley_distances(const TitsRepresentation& r, int radius) {
  std::map<std::string, int> dist{{canonical_key(r.identity()), 0}};
  std::vector<GroupElement> frontier{r.identity()};
  for (int d = 1; d <= radius; ++d) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (int s = 0; s < r.rank(); ++s) {
        auto h = r.times_generator(g, s);
        if (dist.emplace(canonical_key(h), d).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

TEST(Tits, GeneratorMatrices) {
  auto a2 = rep("rank 2; m12=3");
  const auto& s1 = a2.generator(0).matrix();
  // s1 = [[-1, 1], [0, 1]] in the simple-root basis.
  EXPECT_EQ(s1.entry(0, 0)[0], -1);
  EXPECT_EQ(s1.entry(0, 1)[0], 1);
  EXPECT_EQ(s1.entry(1, 0)[0], 0);
  EXPECT_EQ(s1.entry(1, 1)[0], 1);
  auto a1t = rep("rank 2; m12=inf");
  EXPECT_EQ(a1t.generator(1).matrix().entry(1, 0)[0], 2);
}

TEST(Tits, CoxeterRelations) {
  for (const char* text : {"rank 3; m12=3 m13=3 m23=4", "rank 3; m12=5 m23=3", "rank 3; m12=6 m13=inf m23=2",
                           "rank 4; m12=3 m13=3 m14=3 m23=3 m24=3 m34=3"}) {
    auto r = rep(text);
    const auto& cm = r.coxeter_matrix();
    for (int i = 0; i < r.rank(); ++i) {
      EXPECT_TRUE(r.evaluate({i, i}).is_identity());
      for (int j = i + 1; j < r.rank(); ++j) {
        if (cm.is_infinite(i, j)) {
          for (int k = 1; k <= 12; ++k) EXPECT_FALSE(r.evaluate(power_word({i, j}, k)).is_identity());
          continue;
        }
        const int m = cm(i, j);
        EXPECT_TRUE(r.evaluate(power_word({i, j}, m)).is_identity()) << text;
        for (int k = 1; k < m; ++k) EXPECT_FALSE(r.evaluate(power_word({i, j}, k)).is_identity());
      }
    }
  }
}

TEST(Tits, PreservesForm) {
  std::mt19937 rng(2);
  for (const char* text : {"rank 3; m12=3 m13=3 m23=4", "rank 3; m12=5 m13=inf m23=3", "rank 4; m12=6 m23=4 m34=inf"}) {
    auto r = rep(text);
    for (int t = 0; t < 20; ++t) {
      auto g = r.evaluate(random_word(rng, r.rank(), 1 + t));
      EXPECT_TRUE(r.preserves_form(g)) << text;
    }
  }
}

TEST(Tits, KeysSeparateTheSixElementsOfA2) {
  auto r = rep("rank 2; m12=3");
  std::set<std::string> keys;
  for (const Word& w : std::vector<Word>{{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0, 1}})
    keys.insert(canonical_key(r.evaluate(w)));
  EXPECT_EQ(keys.size(), 6u);
}

TEST(Tits, ReducedWordMatchesCayleyDistance) {
  for (const char* text : {"rank 3; m12=3 m23=3", "rank 3; m12=3 m13=3 m23=3", "rank 3; m12=inf m13=4 m23=3"}) {
    auto r = rep(text);
    std::mt19937 rng(9);
    auto dist = cayley_distances(r, 7);
    for (int t = 0; t < 200; ++t) {
      auto g = r.evaluate(random_word(rng, r.rank(), 7));
      Word red = r.reduced_word(g);
      EXPECT_EQ(r.evaluate(red), g);
      EXPECT_EQ(static_cast<int>(red.size()), dist.at(canonical_key(g))) << text;
    }
  }
}

TEST(Tits, FixedSpaceCodim) {
  auto a2 = rep("rank 2; m12=3");
  EXPECT_EQ(fixed_space_codim(a2.identity()), 0);
  EXPECT_EQ(fixed_space_codim(a2.evaluate({0})), 1);
  EXPECT_EQ(fixed_space_codim(a2.evaluate({0, 1})), 2);
  // A translation of the affine line fixes the radical, so codim 1 despite even length.
  auto a1t = rep("rank 2; m12=inf");
  EXPECT_EQ(fixed_space_codim(a1t.evaluate({0, 1})), 1);
}

TEST(Tits, ParseWord) {
  EXPECT_EQ(parse_word("123", 3), (Word{0, 1, 2}));
  EXPECT_EQ(parse_word("s1 s3", 3), (Word{0, 2}));
  EXPECT_EQ(parse_word("1,2", 3), (Word{0, 1}));
  EXPECT_EQ(parse_word("", 3), Word{});
  EXPECT_THROW(parse_word("14", 3), std::invalid_argument);
  EXPECT_EQ(word_to_string({0, 2}), "1 3");
}

TEST(Reflections, DepthZeroIsSimple) {
  auto r = rep("rank 3; m12=3 m13=3 m23=4");
  auto refl = enumerate_reflections(r, 0);
  ASSERT_EQ(refl.size(), 3u);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(refl[static_cast<std::size_t>(s)].element, r.generator(s));
}

TEST(Reflections, SmallCounts) {
  EXPECT_EQ(enumerate_reflections(rep("rank 2; m12=3"), 1).size(), 3u);
  EXPECT_EQ(enumerate_reflections(rep("rank 2; m12=inf"), 1).size(), 4u);
  EXPECT_EQ(enumerate_reflections(rep("rank 2; m12=inf"), 2).size(), 6u);
}

TEST(Reflections, FiniteGroupsStabilize) {
  for (auto [text, count] : std::vector<std::pair<const char*, std::size_t>>{
           {"rank 2; m12=3", 3}, {"rank 2; m12=4", 4}, {"rank 3; m12=3 m23=3", 6}, {"rank 3; m12=3 m23=4", 9},
           {"rank 3; m12=5 m23=3", 15}}) {
    auto r = rep(text);
    EXPECT_EQ(enumerate_reflections(r, 20).size(), count) << text;
    EXPECT_EQ(enumerate_reflections(r, 21).size(), count) << text;
  }
}

TEST(Reflections, MatchConjugateOracle) {
  for (const char* text : {"rank 2; m12=inf", "rank 3; m12=3 m13=3 m23=3", "rank 3; m12=3 m13=3 m23=4",
                           "rank 3; m12=inf m13=inf m23=inf", "rank 3; m12=3 m23=5"}) {
    auto r = rep(text);
    for (int depth = 0; depth <= 3; ++depth) {
      std::set<std::string> got;
      for (const auto& refl : enumerate_reflections(r, depth)) got.insert(canonical_key(refl.element));
      EXPECT_EQ(got, conjugate_keys(r, depth)) << text << " depth " << depth;
    }
  }
}

TEST(Reflections, NestedAndWellFormed) {
  auto r = rep("rank 3; m12=3 m13=3 m23=4");
  auto small = enumerate_reflections(r, 3);
  auto big = enumerate_reflections(r, 4);
  std::set<std::string> bigkeys;
  for (const auto& x : big) bigkeys.insert(canonical_key(x.element));
  EXPECT_EQ(bigkeys.size(), big.size());
  for (const auto& x : small) {
    EXPECT_TRUE(bigkeys.count(canonical_key(x.element)));
    EXPECT_TRUE((x.element * x.element).is_identity());
    EXPECT_EQ(fixed_space_codim(x.element), 1);
    EXPECT_TRUE(r.preserves_form(x.element));
    EXPECT_EQ(r.evaluate(x.word()), x.element);
    EXPECT_EQ(x.element.word(), std::optional<Word>(x.word()));
    EXPECT_GT(detail::root_sign(r.field(), x.root), 0);
  }
}

TEST(Catalog, LookupUpToRelabelling) {
  auto m = parse_coxeter_matrix("rank 4; m13=3 m23=3 m34=4");
  auto e = lookup_catalog(m);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->name, "~B3");
  EXPECT_FALSE(lookup_catalog(parse_coxeter_matrix("rank 3; m12=3 m13=3 m23=4")).has_value());
}
