#include <gtest/gtest.h>

#include "coxref/report.hpp"

using namespace coxref;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.format = default_format(command);
  return c;
}

}  // namespace

TEST(Cli, ClassifySummary) {
  auto c = config("classify");
  c.matrix = "rank 3; m12=3 m13=3 m23=4";
  EXPECT_EQ(dispatch(c).summary, "NonAffine, minimal non-affine, signature (2,1,0)");
}

TEST(Cli, ClassifyAcceptsJsonInput) {
  auto c = config("classify");
  c.matrix = coxeter_matrix_to_json(parse_coxeter_matrix("rank 3; m12=3 m13=3 m23=4")).dump();
  EXPECT_EQ(dispatch(c).data["kind"], "NonAffine");
}

TEST(Cli, AffineBoundSummary) {
  auto c = config("affine-bound");
  c.matrix = "rank 2; m12=inf";
  c.L = 12;
  EXPECT_EQ(dispatch(c).summary, "max reflection length 2 = 2n, attained");
}

TEST(Cli, QuasimorphismCertificate) {
  auto c = config("qm-certify");
  c.k = 3;
  c.pattern = "abc";
  c.g = "abc";
  c.K = 6;
  const auto r = dispatch(c);
  EXPECT_EQ(r.data["bounds"].size(), 6u);
  EXPECT_EQ(r.data["constant"], "1/2");
  EXPECT_TRUE(r.data["certified"].get<bool>());
}

TEST(Cli, SchemasAndInfinity) {
  auto c = config("growth");
  c.matrix = "rank 2; m12=inf";
  c.word = "1 2";
  c.K = 3;
  const auto text = dispatch(c).render("csv");
  EXPECT_NE(text.find("\nk,upper,lower,status\n"), std::string::npos);
  auto b = config("reflen");
  b.matrix = "rank 2; m12=3";
  b.L = 3;
  b.D = 3;
  EXPECT_NE(dispatch(b).render("csv").find("\nkey,len_S,upper,lower,status\n"), std::string::npos);
  auto w = config("warp");
  EXPECT_NE(dispatch(w).render("csv").find("\nr,f,fp,fpp\n"), std::string::npos);
  auto f = config("filling");
  f.q = kInf;
  EXPECT_EQ(dispatch(f).data["config"]["q"], "inf");
}

TEST(Cli, JsonRoundTrips) {
  for (const char* cmd : {"classify", "affine-bound", "qm-certify", "filling"}) {
    auto c = config(cmd);
    c.matrix = std::string(cmd) == "classify" ? "rank 4; m12=3 m23=3 m34=3 m14=3" : "rank 2; m12=inf";
    c.pattern = "abc";
    c.g = "abc";
    const auto text = dispatch(c).render("json");
    const auto parsed = nlohmann::json::parse(text);
    EXPECT_EQ(parsed.dump(2) + "\n", text) << cmd;
    EXPECT_EQ(parsed["version"], kToolVersion);
    EXPECT_EQ(parsed["config"]["command"], cmd);
  }
}

TEST(Cli, ByteIdenticalAcrossRunsAndThreads) {
  std::vector<RunConfig> cfgs;
  auto a = config("reflen");
  a.matrix = "rank 3; m12=3 m13=3 m23=3";
  a.L = 6;
  cfgs.push_back(a);
  auto g = config("growth");
  g.matrix = "rank 3; m12=inf m13=inf m23=inf";
  g.word = "1 2 3";
  g.pattern = "abc";
  g.K = 4;
  cfgs.push_back(g);
  auto q = config("qm-certify");
  q.pattern = "ab";
  cfgs.push_back(q);
  for (auto c : cfgs) {
    c.threads = 1;
    const auto one = dispatch(c).render(c.format);
    EXPECT_EQ(dispatch(c).render(c.format), one);
    c.threads = 4;
    EXPECT_EQ(dispatch(c).render(c.format), one) << c.command;
  }
}

TEST(Cli, ErrorClasses) {
  auto s = config("subgroups");
  s.matrix = "rank 3; m12=3 m23=3";
  EXPECT_THROW(dispatch(s), DomainError);
  auto c = config("classify");
  c.matrix = "rank x";
  EXPECT_THROW(dispatch(c), ParseError);
  auto u = config("nope");
  EXPECT_THROW(dispatch(u), std::invalid_argument);
  auto b = config("reflen");
  b.matrix = "rank 3; m12=inf m13=inf m23=inf";
  b.L = 30;
  b.node_cap = 10000;
  EXPECT_THROW(dispatch(b), ResourceCapError);
  auto k = config("classify");
  k.matrix = "rank 2; m12=3";
  EXPECT_THROW(dispatch(k).render("csv"), std::invalid_argument);
}

TEST(Cli, RationalParsing) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}
