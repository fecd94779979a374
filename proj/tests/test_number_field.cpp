#include <gtest/gtest.h>

#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "coxref/number_field.hpp"

using namespace coxref;
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

Float50 theta50(int n) { return 2 * boost::multiprecision::cos(boost::math::constants::pi<Float50>() / n); }

Float50 eval50(const ExactScalar& a) {
  Float50 t = theta50(a.field()->conductor());
  Float50 acc = 0, p = 1;
  for (const auto& c : a.coefficients()) {
    acc += Float50(boost::multiprecision::numerator(c)) / Float50(boost::multiprecision::denominator(c)) * p;
    p *= t;
  }
  return acc;
}

}  // namespace

TEST(NumberField, MinimalPolynomials) {
  EXPECT_EQ(NumberField::get(2)->minimal_polynomial(), (IntPoly{0, 1}));
  EXPECT_EQ(NumberField::get(4)->minimal_polynomial(), (IntPoly{-2, 0, 1}));
  EXPECT_EQ(NumberField::get(5)->minimal_polynomial(), (IntPoly{-1, -1, 1}));
  EXPECT_EQ(NumberField::get(6)->minimal_polynomial(), (IntPoly{-3, 0, 1}));
  EXPECT_EQ(NumberField::get(12)->minimal_polynomial(), (IntPoly{1, 0, -4, 0, 1}));
}

TEST(NumberField, MinimalPolynomialVanishesAtTheta) {
  for (int n : {2, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30, 60}) {
    auto f = NumberField::get(n);
    Float50 t = theta50(n), acc = 0;
    const auto& mp = f->minimal_polynomial();
    for (std::size_t i = mp.size(); i-- > 0;) acc = acc * t + mp[i];
    EXPECT_LT(boost::multiprecision::abs(acc), Float50(1e-30)) << "N=" << n;
    EXPECT_EQ(f->degree() + 1, static_cast<int>(mp.size()));
  }
}

TEST(NumberField, TwoCosValues) {
  for (int n : {4, 5, 6, 12, 60}) {
    auto f = NumberField::get(n);
    for (int m = 1; m <= n; ++m) {
      if (!f->contains_cos_pi_over(m)) continue;
      auto c = f->two_cos_pi_over(m);
      auto x = ExactScalar::from_ints(f, c);
      Float50 want = 2 * boost::multiprecision::cos(boost::math::constants::pi<Float50>() / m);
      EXPECT_LT(boost::multiprecision::abs(eval50(x) - want), Float50(1e-25)) << "N=" << n << " m=" << m;
    }
  }
}

TEST(NumberField, FieldAxiomsOnRandomElements) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int n : {4, 5, 12, 20}) {
    auto f = NumberField::get(n);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Rational> a(static_cast<std::size_t>(f->degree())), b(static_cast<std::size_t>(f->degree()));
      for (auto& x : a) x = Rational(coef(rng), 1 + std::abs(coef(rng)));
      for (auto& x : b) x = Rational(coef(rng));
      ExactScalar x(f, a), y(f, b);
      EXPECT_EQ((x + y) - y, x);
      EXPECT_EQ(x * y, y * x);
      if (!x.is_zero()) {
        ExactScalar one(f, Rational(1));
        EXPECT_EQ(x * x.inverse(), one);
      }
    }
  }
}

TEST(NumberField, SignAgreesWithHighPrecisionEvaluation) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-50, 50);
  const int conductors[] = {4, 5, 6, 8, 12, 20, 60};
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto f = NumberField::get(conductors[trial % 7]);
    std::vector<Rational> a(static_cast<std::size_t>(f->degree()));
    for (auto& x : a) x = Rational(coef(rng), 1 + std::abs(coef(rng)) % 7);
    ExactScalar x(f, a);
    Float50 v = eval50(x);
    int want = v > 0 ? 1 : (v < 0 ? -1 : 0);
    ASSERT_EQ(x.sign(), want) << x.str();
    ++checked;
  }
  EXPECT_EQ(checked, 10000);
}

TEST(NumberField, SignRefinementOnNearZeroElements) {
  auto f = NumberField::get(4);  // θ = √2
  // Convergents of √2 give |θ - p/q| ~ 1/q², far below the floating budget.
  ExactScalar above(f, std::vector<Rational>{Rational(-665857, 470832), Rational(1)});
  ExactScalar below(f, std::vector<Rational>{Rational(-1393, 985), Rational(1)});
  EXPECT_EQ(above.sign(), -1);
  EXPECT_EQ(below.sign(), 1);
  EXPECT_EQ((above - above).sign(), 0);
}

TEST(Rational, OverflowIsReported) {
  Rational big(INT64_MAX / 2);
  EXPECT_THROW(big * Rational(4), std::overflow_error);
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}
