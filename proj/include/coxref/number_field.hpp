#pragma once

// The real cyclotomic field Q(θ), θ = 2cos(π/N), with exact arithmetic and
// exact sign determination.
//
// Elements are coefficient vectors in the power basis 1, θ, …, θ^(d-1) where
// d = φ(2N)/2 is the degree of the minimal polynomial of θ. Group elements of
// the Tits representation have entries in the order Z[θ], so the field also
// exposes a fast integer-coefficient multiply.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxref/rational.hpp"

namespace coxref {

using IntPoly = std::vector<std::int64_t>;  // low degree first

namespace detail {

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  // den is monic; exact division over Z.
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] = checked_sub(num[i - dn + j], checked_mul(c, den[j]));
  }
  return q;
}

inline IntPoly cyclotomic(int n) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_divide_exact(p, cyclotomic(d));
  }
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

class NumberField {
 public:
  using BigRational = boost::multiprecision::cpp_rational;

  static constexpr int kMaxDegree = 32;

  /// Field Q(2cos(π/N)). Instances are interned per N.
  static std::shared_ptr<const NumberField> get(int conductor) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const NumberField>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(conductor); it != cache.end()) return it->second;
    auto f = std::shared_ptr<const NumberField>(new NumberField(conductor));
    cache.emplace(conductor, f);
    return f;
  }

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const IntPoly& minimal_polynomial() const { return minpoly_; }
  double theta() const { return theta_; }

  /// True when 2cos(π/m) lies in this field.
  bool contains_cos_pi_over(int m) const { return m <= 3 || conductor_ % m == 0; }

  /// Coefficients of 2cos(π/m) in the power basis.
  IntPoly two_cos_pi_over(int m) const {
    IntPoly out(static_cast<std::size_t>(degree_), 0);
    if (m == 1) {
      out[0] = -2;
      return out;
    }
    if (m == 2) return out;
    if (m == 3) {
      out[0] = 1;
      return out;
    }
    if (conductor_ % m != 0) throw std::invalid_argument("coxref: 2cos(pi/" + std::to_string(m) + ") not in field");
    return chebyshev(conductor_ / m);
  }

  /// out = a * b, all in Z[θ].
  void mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const {
    const auto d = static_cast<std::size_t>(degree_);
    if (d == 1) {
      out[0] = detail::checked_mul(a[0], b[0]);
      return;
    }
    std::int64_t wide[2 * kMaxDegree] = {};
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b[j] == 0) continue;
        wide[i + j] = detail::checked_add(wide[i + j], detail::checked_mul(a[i], b[j]));
      }
    }
    reduce_wide(wide);
    std::copy_n(wide, d, out.begin());
  }

  /// acc += a * b.
  void fma(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> acc) const {
    const auto d = static_cast<std::size_t>(degree_);
    if (d == 1) {
      acc[0] = detail::checked_add(acc[0], detail::checked_mul(a[0], b[0]));
      return;
    }
    std::int64_t tmp[kMaxDegree];
    mul(a, b, std::span<std::int64_t>(tmp, d));
    for (std::size_t i = 0; i < d; ++i) acc[i] = detail::checked_add(acc[i], tmp[i]);
  }

  /// Product of rational-coefficient vectors.
  std::vector<BigRational> mul(std::span<const BigRational> a, std::span<const BigRational> b) const {
    const auto d = static_cast<std::size_t>(degree_);
    std::vector<BigRational> wide(2 * d, BigRational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b[j] == 0) continue;
        wide[i + j] += a[i] * b[j];
      }
    }
    for (std::size_t k = 2 * d - 1; k >= d; --k) {
      if (wide[k] == 0) continue;
      // θ^k = θ^(k-d)·θ^d and θ^d = -Σ minpoly[i] θ^i.
      const BigRational c = wide[k];
      wide[k] = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (minpoly_[i] != 0) wide[k - d + i] -= c * minpoly_[i];
      }
    }
    wide.resize(d);
    return wide;
  }

  /// Exact sign of Σ c_i θ^i.
  int sign(std::span<const BigRational> c) const {
    if (std::all_of(c.begin(), c.end(), [](const BigRational& r) { return r == 0; })) return 0;
    if (degree_ == 1) return c[0].sign();
    double value = 0.0, magnitude = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double term = c[i].convert_to<double>() * theta_powers_[i];
      value += term;
      magnitude += std::fabs(term);
    }
    if (int s = decided(value, magnitude)) return s;
    return refine_sign(c);
  }

  int sign(std::span<const std::int64_t> c) const {
    if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) return 0;
    if (degree_ == 1) return (c[0] > 0) - (c[0] < 0);
    double value = 0.0, magnitude = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double term = static_cast<double>(c[i]) * theta_powers_[i];
      value += term;
      magnitude += std::fabs(term);
    }
    if (int s = decided(value, magnitude)) return s;
    std::vector<BigRational> big(c.begin(), c.end());
    return refine_sign(big);
  }

  double to_double(std::span<const BigRational> c) const {
    double v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i].convert_to<double>() * theta_powers_[i];
    return v;
  }

  /// Inverse of a nonzero element, by solving (multiplication-by-a)·x = 1.
  std::vector<BigRational> inverse(std::span<const BigRational> a) const {
    const auto d = static_cast<std::size_t>(degree_);
    // Column j of the multiplication matrix is a·θ^j.
    std::vector<std::vector<BigRational>> m(d, std::vector<BigRational>(d + 1, BigRational(0)));
    std::vector<BigRational> basis(d, BigRational(0));
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(basis.begin(), basis.end(), BigRational(0));
      basis[j] = 1;
      auto col = mul(a, basis);
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (piv < d && m[piv][col] == 0) ++piv;
      if (piv == d) throw std::domain_error("coxref: inverse of zero field element");
      std::swap(m[piv], m[col]);
      const BigRational inv = BigRational(1) / m[col][col];
      for (std::size_t k = col; k <= d; ++k) m[col][k] *= inv;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const BigRational f = m[r][col];
        for (std::size_t k = col; k <= d; ++k) m[r][k] -= f * m[col][k];
      }
    }
    std::vector<BigRational> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = m[i][d];
    return x;
  }

 private:
  using BigQ = BigRational;

  explicit NumberField(int conductor) : conductor_(conductor) {
    if (conductor < 2) throw std::invalid_argument("coxref: field conductor must be >= 2");
    const int n = 2 * conductor;
    degree_ = detail::euler_phi(n) / 2;
    if (degree_ > kMaxDegree) {
      throw std::invalid_argument("coxref: field Q(2cos(pi/" + std::to_string(conductor) + ")) has degree " +
                                  std::to_string(degree_) + ", above the supported maximum");
    }
    build_minimal_polynomial(detail::cyclotomic(n));
    theta_ = 2.0 * std::cos(M_PI / conductor);
    theta_powers_.resize(static_cast<std::size_t>(degree_));
    double p = 1.0;
    for (auto& tp : theta_powers_) {
      tp = p;
      p *= theta_;
    }
    // θ is the largest conjugate; the next one is 2cos(jπ/N) for the next odd j coprime to 2N.
    int j = 3;
    while (std::gcd(j, n) != 1) j += 2;
    isolate_lo_ = degree_ > 1 ? 0.5 * (theta_ + 2.0 * std::cos(j * M_PI / conductor)) : theta_;
    isolate_hi_ = 2.0;
  }

  void build_minimal_polynomial(const IntPoly& cyclo) {
    // cyclo is palindromic of degree 2d; rewrite z^-d·Φ(z) in x = z + 1/z.
    const int d = degree_;
    std::vector<std::int64_t> sym(static_cast<std::size_t>(2 * d + 1));
    for (int i = 0; i <= 2 * d; ++i) sym[static_cast<std::size_t>(i)] = cyclo[static_cast<std::size_t>(i)];
    minpoly_.assign(static_cast<std::size_t>(d) + 1, 0);
    for (int k = d; k >= 0; --k) {
      std::int64_t b = sym[static_cast<std::size_t>(d + k)];
      minpoly_[static_cast<std::size_t>(k)] = b;
      if (b == 0) continue;
      for (int i = 0; i <= k; ++i) {
        int exponent = k - 2 * i;
        auto& slot = sym[static_cast<std::size_t>(d + exponent)];
        slot = detail::checked_sub(slot, detail::checked_mul(b, detail::binomial(k, i)));
      }
    }
    reduction_.assign(static_cast<std::size_t>(d), IntPoly(static_cast<std::size_t>(d), 0));
    // reduction_[k] = θ^(d+k) in the power basis.
    IntPoly cur(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = -minpoly_[static_cast<std::size_t>(i)];
    for (int k = 0; k < d; ++k) {
      reduction_[static_cast<std::size_t>(k)] = cur;
      IntPoly next(static_cast<std::size_t>(d), 0);
      std::int64_t top = cur[static_cast<std::size_t>(d - 1)];
      for (int i = d - 1; i >= 1; --i) next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
      for (int i = 0; i < d; ++i) {
        next[static_cast<std::size_t>(i)] = detail::checked_add(
            next[static_cast<std::size_t>(i)], detail::checked_mul(top, -minpoly_[static_cast<std::size_t>(i)]));
      }
      cur = std::move(next);
    }
  }

  void reduce_wide(std::int64_t* wide) const {
    const int d = degree_;
    for (int k = 2 * d - 2; k >= d; --k) {
      std::int64_t c = wide[k];
      if (c == 0) continue;
      wide[k] = 0;
      const auto& red = reduction_[static_cast<std::size_t>(k - d)];
      for (int i = 0; i < d; ++i) {
        if (red[static_cast<std::size_t>(i)] != 0) {
          wide[i] = detail::checked_add(wide[i], detail::checked_mul(c, red[static_cast<std::size_t>(i)]));
        }
      }
    }
  }

  IntPoly chebyshev(int k) const {
    // C_0 = 2, C_1 = θ, C_{j+1} = θ·C_j − C_{j−1}; C_j = 2cos(jπ/N).
    const auto d = static_cast<std::size_t>(degree_);
    IntPoly prev(d, 0), cur(d, 0), theta(d, 0);
    prev[0] = 2;
    if (k == 0) return prev;
    if (d == 1) {
      cur[0] = -minpoly_[0];
    } else {
      cur[1] = 1;
    }
    theta = cur;
    for (int j = 1; j < k; ++j) {
      IntPoly next(d, 0);
      mul(theta, cur, next);
      for (std::size_t i = 0; i < d; ++i) next[i] = detail::checked_sub(next[i], prev[i]);
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  static int decided(double value, double magnitude) {
    const double budget = magnitude * 1e-12 + 1e-300;
    if (value > budget) return 1;
    if (value < -budget) return -1;
    return 0;
  }

  static BigQ from_double(double x) {
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    BigQ q(scaled);
    int shift = exp - 53;
    if (shift >= 0) {
      q *= BigQ(boost::multiprecision::cpp_int(1) << shift);
    } else {
      q /= BigQ(boost::multiprecision::cpp_int(1) << (-shift));
    }
    return q;
  }

  int minpoly_sign_at(const BigQ& x) const {
    BigQ acc(0);
    for (std::size_t i = minpoly_.size(); i-- > 0;) acc = acc * x + BigQ(minpoly_[i]);
    return acc.sign();
  }

  // Interval evaluation of Σ c_i x^i for x ∈ [lo, hi].
  static std::pair<BigQ, BigQ> eval_interval(std::span<const BigQ> c, const BigQ& lo, const BigQ& hi) {
    BigQ alo(0), ahi(0);
    for (std::size_t i = c.size(); i-- > 0;) {
      BigQ p[4] = {alo * lo, alo * hi, ahi * lo, ahi * hi};
      alo = *std::min_element(p, p + 4);
      ahi = *std::max_element(p, p + 4);
      const BigQ& ci = c[i];
      alo += ci;
      ahi += ci;
    }
    return {alo, ahi};
  }

  int refine_sign(std::span<const BigQ> c) const {
    BigQ lo = from_double(isolate_lo_);
    BigQ hi = from_double(isolate_hi_);
    const int slo = minpoly_sign_at(lo);
    const int shi = minpoly_sign_at(hi);
    if (slo == 0 || shi == 0 || slo == shi) throw std::logic_error("coxref: isolating interval for theta is invalid");
    for (int iter = 0; iter < 4096; ++iter) {
      auto [vlo, vhi] = eval_interval(c, lo, hi);
      if (vlo > 0) return 1;
      if (vhi < 0) return -1;
      BigQ mid = (lo + hi) / 2;
      int sm = minpoly_sign_at(mid);
      if (sm == 0) throw std::logic_error("coxref: rational root of an irreducible minimal polynomial");
      if (sm == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    throw std::logic_error("coxref: sign refinement did not terminate");
  }

  int conductor_ = 2;
  int degree_ = 1;
  IntPoly minpoly_;
  std::vector<IntPoly> reduction_;
  double theta_ = 0.0;
  std::vector<double> theta_powers_;
  double isolate_lo_ = 0.0;
  double isolate_hi_ = 2.0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// An element of Q(2cos(π/N)) with arbitrary-precision rational coefficients.
class ExactScalar {
 public:
  using BigRational = NumberField::BigRational;

  ExactScalar() = default;
  ExactScalar(FieldPtr field, std::vector<BigRational> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(field_->degree()), BigRational(0));
  }
  ExactScalar(FieldPtr field, const std::vector<Rational>& coeffs) : field_(std::move(field)) {
    for (const auto& r : coeffs) c_.push_back(BigRational(r.num()) / r.den());
    c_.resize(static_cast<std::size_t>(field_->degree()), BigRational(0));
  }
  ExactScalar(FieldPtr field, Rational value) : field_(std::move(field)) {
    c_.assign(static_cast<std::size_t>(field_->degree()), BigRational(0));
    c_[0] = BigRational(value.num()) / value.den();
  }
  static ExactScalar from_ints(FieldPtr field, std::span<const std::int64_t> coeffs) {
    return ExactScalar(std::move(field), std::vector<BigRational>(coeffs.begin(), coeffs.end()));
  }

  const FieldPtr& field() const { return field_; }
  std::span<const BigRational> coefficients() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigRational& r) { return r == 0; });
  }
  int sign() const { return field_->sign(std::span<const BigRational>(c_)); }
  double to_double() const { return field_->to_double(c_); }

  ExactScalar operator-() const {
    ExactScalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    check_same(a, b);
    ExactScalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    check_same(a, b);
    return ExactScalar(a.field_, a.field_->mul(std::span<const BigRational>(a.c_), std::span<const BigRational>(b.c_)));
  }
  friend ExactScalar operator*(const Rational& a, const ExactScalar& b) {
    ExactScalar r = b;
    const BigRational f = BigRational(a.num()) / a.den();
    for (auto& x : r.c_) x *= f;
    return r;
  }
  ExactScalar inverse() const { return ExactScalar(field_, field_->inverse(c_)); }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.field_->conductor() == b.field_->conductor() && a.c_ == b.c_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")";
      if (i == 1) out += "*t";
      if (i > 1) out += "*t^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void check_same(const ExactScalar& a, const ExactScalar& b) {
    if (a.field_ != b.field_ && a.field_->conductor() != b.field_->conductor()) {
      throw std::invalid_argument("coxref: mixing scalars from different fields");
    }
  }

  FieldPtr field_;
  std::vector<BigRational> c_;
};

}  // namespace coxref
