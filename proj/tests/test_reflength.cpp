#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "coxref/reflength.hpp"

using namespace coxref;

namespace {

TitsRepresentation rep(const char* text) { return TitsRepresentation(parse_coxeter_matrix(text)); }

// Oracle: least number of letters whose removal from `word` leaves the identity,
// by plain enumeration of keep-masks.
int deletion_oracle(const TitsRepresentation& r, const Word& word) {
  const int n = static_cast<int>(word.size());
  int best = n;
  for (std::uint32_t keep = 0; keep < (1u << n); ++keep) {
    const int deleted = n - std::popcount(keep);
    if (deleted >= best) continue;
    Word sub;
    for (int i = 0; i < n; ++i)
      if (keep >> i & 1u) sub.push_back(word[static_cast<std::size_t>(i)]);
    if (r.evaluate(sub).is_identity()) best = deleted;
  }
  return best;
}

GroupElement product(const TitsRepresentation& r, const std::vector<Word>& words) {
  GroupElement g = r.identity();
  for (const auto& w : words) {
    auto x = r.evaluate(w);
    EXPECT_EQ(fixed_space_codim(x), 1);
    EXPECT_TRUE((x * x).is_identity());
    g = g * x;
  }
  return g;
}

}  // namespace

TEST(ReflLen, A2AllElements) {
  auto r = rep("rank 2; m12=3");
  auto ball = reflen_ball(r, 3, 2);
  ASSERT_EQ(ball.results.size(), 6u);
  std::vector<int> values;
  for (const auto& x : ball.results) {
    EXPECT_EQ(x.status, ReflStatus::Exact);
    values.push_back(*x.upper);
  }
  std::sort(values.begin(), values.end());
  EXPECT_EQ(values, (std::vector<int>{0, 1, 1, 1, 2, 2}));
}

TEST(ReflLen, AffineLineTranslation) {
  auto r = rep("rank 2; m12=inf");
  auto ball = reflen_ball(r, 6, 6);
  int idx = ball.ball.find(r.evaluate(power_word({0, 1}, 3)));
  ASSERT_GE(idx, 0);
  const auto& res = ball.results[static_cast<std::size_t>(idx)];
  EXPECT_EQ(res.upper, 2);
  EXPECT_EQ(res.status, ReflStatus::Exact);
}

TEST(ReflLen, ElementExamples) {
  auto a3 = rep("rank 3; m12=3 m23=3");
  // The longest element of S4 is (14)(23), a product of two transpositions.
  auto longest = reflen_element(a3, {0, 1, 0, 2, 1, 0});
  EXPECT_EQ(longest.standard_length, 6);
  EXPECT_EQ(longest.upper, 2);
  EXPECT_EQ(carter_length_finite(a3, longest.reduced), 2);
  EXPECT_EQ(deletion_oracle(a3, longest.reduced), 2);
  auto coxeter = reflen_element(a3, {0, 1, 2});
  EXPECT_EQ(coxeter.upper, 3);
  EXPECT_EQ(coxeter.status, ReflStatus::Exact);
  EXPECT_EQ(longest.status, ReflStatus::Exact);

  auto a2t = rep("rank 3; m12=3 m13=3 m23=3");
  Word translation = power_word({0, 1, 2}, 2);
  auto t = reflen_element(a2t, translation);
  EXPECT_EQ(t.standard_length, 6);
  EXPECT_EQ(t.upper, 4);
  EXPECT_EQ(t.status, ReflStatus::Exact);
  EXPECT_EQ(deletion_oracle(a2t, t.reduced), 4);

  auto w3 = rep("rank 3; m12=inf m13=inf m23=inf");
  auto abc = reflen_element(w3, {0, 1, 2});
  EXPECT_EQ(abc.upper, 3);
  EXPECT_EQ(abc.status, ReflStatus::Exact);
}

TEST(ReflLen, WitnessesMultiplyOut) {
  for (const char* text : {"rank 3; m12=3 m13=3 m23=4", "rank 3; m12=3 m13=3 m23=3", "rank 3; m12=inf m13=inf m23=inf"}) {
    auto r = rep(text);
    for (int D : {0, 2, 5}) {
      auto ball = reflen_ball(r, 5, D);
      for (const auto& x : ball.results) {
        ASSERT_TRUE(x.upper.has_value());
        EXPECT_EQ(static_cast<int>(x.witness.size()), *x.upper);
        EXPECT_EQ(product(r, x.witness), x.element) << text;
        EXPECT_EQ((*x.upper - x.standard_length) % 2, 0);
        EXPECT_LE(x.lower, *x.upper);
        EXPECT_GE(*x.upper, fixed_space_codim(x.element));
      }
    }
  }
}

TEST(ReflLen, DeletionBoundMatchesOracle) {
  std::mt19937 rng(4);
  for (const char* text : {"rank 3; m12=3 m13=3 m23=4", "rank 4; m12=3 m13=3 m14=3 m23=3 m24=3 m34=3",
                           "rank 4; m12=inf m34=inf", "rank 3; m12=5 m23=3"}) {
    auto r = rep(text);
    std::uniform_int_distribution<int> gen(0, r.rank() - 1);
    for (int t = 0; t < 40; ++t) {
      Word w;
      for (int i = 0; i < 10; ++i) w.push_back(gen(rng));
      Word red = r.reduced_word(r.evaluate(w));
      ReflLenProtocol proto;
      proto.d_cap = 2;  // force the deletion search to do the work
      auto res = reflen_element(r, red, proto);
      EXPECT_EQ(res.status, ReflStatus::Exact);
      EXPECT_EQ(*res.upper, deletion_oracle(r, red)) << text;
      EXPECT_EQ(product(r, res.witness), res.element);
    }
  }
}

TEST(ReflLen, FullDepthSearchIsExact) {
  // With D = L every minimal factorization is visible inside the ball.
  auto r = rep("rank 3; m12=3 m13=3 m23=4");
  ReflLenOptions opts;
  opts.use_deletion_bound = false;
  auto ball = reflen_ball(r, 6, 6, opts);
  for (const auto& x : ball.results) EXPECT_EQ(*x.bfs_upper, deletion_oracle(r, x.reduced));
}

TEST(ReflLen, CarterEquality) {
  for (auto [text, size] : std::vector<std::pair<const char*, std::size_t>>{
           {"rank 2; m12=3", 6}, {"rank 2; m12=4", 8}, {"rank 3; m12=3 m23=3", 24}}) {
    auto r = rep(text);
    auto ball = reflen_ball(r, 10, 10);
    ASSERT_EQ(ball.results.size(), size);
    for (const auto& x : ball.results) {
      EXPECT_EQ(x.status, ReflStatus::Exact);
      EXPECT_EQ(*x.upper, carter_length_finite(r, x.reduced)) << text;
    }
  }
  EXPECT_EQ(carter_length_finite(rep("rank 3; m12=3 m23=3"), {}), 0);
  EXPECT_EQ(carter_length_finite(rep("rank 3; m12=3 m23=3"), {0}), 1);
  EXPECT_EQ(carter_length_finite(rep("rank 3; m12=3 m23=3"), {0, 1, 2}), 3);
  EXPECT_THROW(carter_length_finite(rep("rank 2; m12=inf"), {0}), DomainError);
}

TEST(ReflLen, MonotoneInDepth) {
  auto r = rep("rank 3; m12=3 m13=3 m23=4");
  auto ball = cayley_ball(r, 6);
  std::vector<int> prev;
  for (int D = 0; D <= 5; ++D) {
    auto rd = reflection_distances(ball, enumerate_reflections(r, D));
    if (!prev.empty()) {
      for (std::size_t i = 0; i < rd.dist.size(); ++i) {
        if (prev[i] < 0) continue;
        ASSERT_GE(rd.dist[i], 0);
        EXPECT_LE(rd.dist[i], prev[i]);
      }
    }
    prev = rd.dist;
  }
}

TEST(ReflLen, ConjugationInvariance) {
  auto r = rep("rank 3; m12=3 m13=3 m23=3");
  auto ball = reflen_ball(r, 7, 4);
  int compared = 0;
  for (std::size_t i = 0; i < ball.results.size(); ++i) {
    const auto& x = ball.results[i];
    for (int s = 0; s < r.rank(); ++s) {
      auto y = r.generator(s) * x.element * r.generator(s);
      int j = ball.ball.find(y);
      if (j < 0) continue;
      const auto& z = ball.results[static_cast<std::size_t>(j)];
      if (x.status != ReflStatus::Exact || z.status != ReflStatus::Exact) continue;
      EXPECT_EQ(*x.upper, *z.upper);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(ReflLen, RestrictionToParabolic) {
  struct Case {
    const char* big;
    Subset sub;
    int L;
  };
  for (const auto& c : {Case{"rank 3; m12=3 m13=3 m23=4", {1, 2}, 4},
                        Case{"rank 4; m12=3 m13=3 m14=3 m23=3 m24=3 m34=3", {0, 1, 3}, 6}}) {
    auto big = rep(c.big);
    auto small = TitsRepresentation(big.coxeter_matrix().restrict(c.sub));
    auto sball = reflen_ball(small, c.L, 3);
    for (const auto& x : sball.results) {
      Word lifted;
      for (int s : x.reduced) lifted.push_back(c.sub[static_cast<std::size_t>(s)]);
      auto y = reflen_element(big, lifted);
      ASSERT_EQ(x.status, ReflStatus::Exact);
      ASSERT_EQ(y.status, ReflStatus::Exact);
      EXPECT_EQ(*x.upper, *y.upper) << c.big;
    }
  }
}

TEST(ReflLen, SurjectionMonotone) {
  // I2(6) -> I2(3) sending generators to generators.
  auto six = rep("rank 2; m12=6");
  auto three = rep("rank 2; m12=3");
  auto ball = reflen_ball(six, 6, 6);
  ASSERT_EQ(ball.results.size(), 12u);
  for (const auto& x : ball.results) {
    auto img = reflen_element(three, x.reduced);
    EXPECT_LE(*img.upper, *x.upper);
  }
}

TEST(ReflLen, AffineBound) {
  auto a1 = affine_bound_experiment(rep("rank 2; m12=inf"), 12, 6);
  EXPECT_EQ(a1.n, 1);
  EXPECT_EQ(a1.max_exact, 2);
  EXPECT_TRUE(a1.attained);
  auto a2 = affine_bound_experiment(rep("rank 3; m12=3 m13=3 m23=3"), 8, 6);
  EXPECT_EQ(a2.max_exact, 4);
  EXPECT_TRUE(a2.attained);
  auto a11 = affine_bound_experiment(rep("rank 4; m12=inf m34=inf"), 8, 6);
  EXPECT_EQ(a11.n, 2);
  EXPECT_EQ(a11.max_exact, 4);
  EXPECT_THROW(affine_bound_experiment(rep("rank 3; m12=3 m13=3 m23=4"), 4, 4), DomainError);
  EXPECT_THROW(affine_bound_experiment(rep("rank 2; m12=3"), 4, 4), DomainError);
}

TEST(ReflLen, GrowthProfiles) {
  auto a1 = rep("rank 2; m12=inf");
  auto rec = growth_profile(a1, {0, 1}, 10);
  ASSERT_EQ(rec.powers.size(), 10u);
  for (const auto& [k, r] : rec.powers) {
    EXPECT_EQ(r.upper, 2) << k;
    EXPECT_EQ(r.status, ReflStatus::Exact);
  }
  auto inv = growth_profile(rep("rank 3; m12=3 m13=3 m23=4"), {0}, 5);
  std::vector<int> values;
  for (const auto& [k, r] : inv.powers) values.push_back(*r.upper);
  EXPECT_EQ(values, (std::vector<int>{1, 0, 1, 0, 1}));
}

TEST(ReflLen, CertificatesFeedTheLowerBound) {
  ReflLenProtocol proto;
  proto.options.use_deletion_bound = false;
  proto.d_cap = 0;
  proto.options.certificates.push_back({"test-cert", [](const GroupElement&, const Word& w) { return static_cast<int>(w.size()) >= 3 ? 3 : 0; }});
  auto r = reflen_element(rep("rank 3; m12=inf m13=inf m23=inf"), {0, 1, 2, 0, 1}, proto);
  EXPECT_EQ(r.lower, 3);
  EXPECT_EQ(r.certificate_lower, 3);
}

TEST(ReflLen, ThreadCountDoesNotChangeResults) {
  auto r = rep("rank 4; m12=3 m13=3 m14=3 m23=3 m24=3 m34=3");
  ReflLenOptions one, many;
  many.threads = 4;
  auto a = reflen_ball(r, 5, 3, one);
  auto b = reflen_ball(r, 5, 3, many);
  ASSERT_EQ(a.results.size(), b.results.size());
  EXPECT_EQ(a.ball.keys, b.ball.keys);
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].upper, b.results[i].upper);
    EXPECT_EQ(a.results[i].lower, b.results[i].lower);
    EXPECT_EQ(a.results[i].witness, b.results[i].witness);
  }
}

TEST(ReflLen, NodeCapFlagsPartialBall) {
  ReflLenOptions opts;
  opts.node_cap = 20;
  auto ball = reflen_ball(rep("rank 3; m12=inf m13=inf m23=inf"), 6, 2, opts);
  EXPECT_TRUE(ball.capped());
  EXPECT_LE(ball.results.size(), 20u);
}
