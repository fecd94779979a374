#include <gtest/gtest.h>

#include <random>

#include "coxref/quasi_cert.hpp"
#include "coxref/reflength.hpp"

using namespace coxref;

namespace {

FreeCoxeterWord W(const char* text, int k = 3) { return parse_free_word(text, k); }

// Oracle helpers on plain strings over 'a'..: reduction by repeated pair removal,
// and occurrence counting with std::string::find.
std::string reduce_str(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1]) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

int count_str(const std::string& text, const std::string& pat) {
  int c = 0;
  for (std::size_t pos = text.find(pat); pos != std::string::npos; pos = text.find(pat, pos + 1)) ++c;
  return c;
}

int h_str(const std::string& w, const std::string& g) {
  std::string r = reduce_str(g);
  return count_str(r, w) - count_str(r, std::string(w.rbegin(), w.rend()));
}

std::vector<std::string> reduced_strings(int k, int B) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == B) continue;
    for (int x = 0; x < k; ++x) {
      char c = static_cast<char>('a' + x);
      if (!out[i].empty() && out[i].back() == c) continue;
      out.push_back(out[i] + c);
    }
  }
  return out;
}

int defect_oracle(const std::string& w, int k, int B) {
  auto all = reduced_strings(k, B);
  int best = 0;
  for (const auto& g : all)
    for (const auto& h : all) best = std::max(best, std::abs(h_str(w, g + h) - h_str(w, g) - h_str(w, h)));
  return best;
}

// Oracle: slope of H_w on powers of g equals the cyclic count in the cyclic core.
int cyclic_oracle(const std::string& w, const std::string& g) {
  std::string c = reduce_str(g);
  while (c.size() >= 2 && c.front() == c.back()) c = c.substr(1, c.size() - 2);
  if (c.size() <= 1) return 0;
  std::string t = c;
  while (t.size() < c.size() + w.size()) t += c;
  auto cyc = [&](const std::string& p) {
    int n = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (t.compare(i, p.size(), p) == 0) ++n;
    return n;
  };
  return cyc(w) - cyc(std::string(w.rbegin(), w.rend()));
}

}  // namespace

TEST(FreeWords, Reduce) {
  EXPECT_TRUE(W("aa").empty());
  EXPECT_EQ(to_string(W("abbac")), "c");
  EXPECT_EQ(to_string(W("abc")), "abc");
  EXPECT_EQ(to_string(W("1 2 3")), "abc");
  EXPECT_THROW(W("abd"), std::invalid_argument);
  EXPECT_EQ(to_string(inverse(W("abc"))), "cba");
  EXPECT_EQ(to_string(W("abc") * W("cba")), "e");
  EXPECT_EQ(enumerate_reduced(3, 3).size(), 1u + 3 + 6 + 12);
}

TEST(Counting, Examples) {
  EXPECT_EQ(counting_qm(W("ab"), W("ab")), 1);
  EXPECT_EQ(counting_qm(W("ab"), W("ba")), -1);
  EXPECT_EQ(counting_qm(W("abc"), W("abcabcabc")), 3);
  EXPECT_EQ(counting_qm(W("a"), W("abcabca")), 0);
  EXPECT_EQ(counting_qm(W("aba"), W("ababa")), 0);  // palindrome: w = w⁻¹
}

TEST(Counting, AntisymmetryAndOracle) {
  std::mt19937 rng(1);
  for (int t = 0; t < 2000; ++t) {
    auto g = random_reduced(3, t % 17, rng);
    for (const char* w : {"ab", "abc", "abac"}) {
      EXPECT_EQ(counting_qm(W(w), inverse(g)), -counting_qm(W(w), g));
      EXPECT_EQ(counting_qm(W(w), g), h_str(w, to_string(g) == "e" ? "" : to_string(g)));
    }
  }
}

TEST(Defect, SingleLetterIsZero) {
  auto d = defect_window(W("a"), 4);
  EXPECT_EQ(d.defect, 0);
  EXPECT_TRUE(d.stabilized);
}

TEST(Defect, MatchesExhaustiveOracle) {
  EXPECT_EQ(defect_window(W("ab"), 6).defect, defect_oracle("ab", 3, 6));
  auto abc = defect_window(W("abc"), 9);
  EXPECT_EQ(abc.defect, defect_oracle("abc", 3, 9));
  EXPECT_TRUE(abc.stabilized);
  // the reported pair attains the maximum
  EXPECT_EQ(std::abs(counting_qm(W("abc"), abc.g * abc.h) - counting_qm(W("abc"), abc.g) - counting_qm(W("abc"), abc.h)),
            abc.defect);
}

TEST(Defect, ThreadsDoNotChangeResult) {
  DefectOptions many;
  many.threads = 4;
  auto a = defect_window(W("abc"), 8);
  auto b = defect_window(W("abc"), 8, many);
  EXPECT_EQ(a.defect, b.defect);
  EXPECT_EQ(a.per_window, b.per_window);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.h, b.h);
}

TEST(Defect, CapAndPreconditions) {
  DefectOptions tiny;
  tiny.pair_cap = 100;
  EXPECT_THROW(defect_window(W("abc"), 6, tiny), ResourceCapError);
  EXPECT_THROW(defect_window(W("abc"), 2), std::invalid_argument);
  auto s = defect_sample(W("abc"), 12, 1000, 5);
  EXPECT_FALSE(s.certified);
}

TEST(Defect, SoundOnRandomPairs) {
  const auto w = W("abc");
  const int D = defect_window(w, 9).defect;
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> len(0, 36);
  int violations = 0;
  for (int t = 0; t < 100000; ++t) {
    auto g = random_reduced(3, len(rng), rng);
    auto h = random_reduced(3, len(rng), rng);
    if (std::abs(counting_qm(w, g * h) - counting_qm(w, g) - counting_qm(w, h)) > D) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Homogenize, Examples) {
  EXPECT_EQ(homogenize(W("abc"), W("")), Rational(0));
  EXPECT_EQ(homogenize(W("abc"), W("abc")), Rational(1));
  EXPECT_EQ(homogenize(W("abc"), W("a")), Rational(0));
  EXPECT_EQ(homogenize(W("abc"), W("cba")), Rational(-1));
}

TEST(Homogenize, OracleHomogeneityConjugation) {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto g = random_reduced(3, 1 + t % 9, rng);
    auto k = random_reduced(3, t % 5, rng);
    for (const char* ws : {"abc", "ab", "abcb"}) {
      auto w = W(ws);
      Rational phi = homogenize(w, g);
      EXPECT_EQ(phi, Rational(cyclic_oracle(ws, to_string(g))));
      for (int n = 1; n <= 10; ++n) EXPECT_EQ(homogenize(w, power(g, n)), Rational(n) * phi);
      EXPECT_EQ(homogenize(w, k * g * inverse(k)), phi);
    }
  }
}

TEST(Homogenize, DefectBound) {
  const auto w = W("abc");
  const int DH = defect_window(w, 9).defect;
  std::mt19937 rng(8);
  for (int t = 0; t < 2000; ++t) {
    auto g = random_reduced(3, 1 + t % 12, rng);
    auto h = random_reduced(3, 1 + (t / 12) % 12, rng);
    Rational d = abs(homogenize(w, g * h) - homogenize(w, g) - homogenize(w, h));
    EXPECT_LE(d, Rational(2 * DH));
  }
}

TEST(Certificate, FreeCoxeterAbc) {
  auto cert = build_certificate(W("abc"));
  EXPECT_TRUE(cert.certified);
  EXPECT_EQ(cert.window, 9);
  EXPECT_EQ(cert.generator_max, Rational(0));
  EXPECT_EQ(cert.defect_phi, Rational(2 * cert.raw_defect));
  EXPECT_EQ(cert.constant, Rational(1) / cert.defect_phi);
  auto b = certify_lower_bound(cert, W("abc"), 12);
  EXPECT_FALSE(b.vacuous);
  for (const auto& [k, v] : b.bounds) EXPECT_EQ(v, (Rational(k) / cert.defect_phi).ceil());
  EXPECT_GT(b.bounds.back().second, b.bounds.front().second);
  auto a = certify_lower_bound(cert, W("a"), 3);
  EXPECT_TRUE(a.vacuous);
  for (const auto& [k, v] : a.bounds) EXPECT_EQ(v, 0);
}

TEST(Certificate, Refusals) {
  EXPECT_THROW(build_certificate(W("ab", 2)), DomainError);
  EXPECT_THROW(build_certificate(W("aba")), DomainError);
  EXPECT_THROW(build_certificate(W("a")), DomainError);
  auto weak = build_certificate(W("abc"), 4);
  EXPECT_FALSE(weak.certified);
  EXPECT_THROW(certify_lower_bound(weak, W("abc"), 3), DomainError);
}

TEST(Certificate, SoundAgainstReflectionLength) {
  auto cert = build_certificate(W("abc"));
  auto bounds = certify_lower_bound(cert, W("abc"), 4);
  TitsRepresentation w3(parse_coxeter_matrix("rank 3; m12=inf m13=inf m23=inf"));
  ReflLenProtocol proto;
  proto.options.certificates.push_back(as_reflength_certificate(cert));
  for (const auto& [k, bound] : bounds.bounds) {
    auto r = reflen_element(w3, power_word({0, 1, 2}, k), proto);
    ASSERT_EQ(r.status, ReflStatus::Exact);
    EXPECT_GE(*r.upper, bound);
    EXPECT_EQ(r.certificate_lower, bound);
  }
}
