#pragma once

// Rank-3 hyperbolic triangle reflection groups with a cusp, in the upper
// half-plane. A 2×2 matrix of determinant -1 acts by z ↦ (a z̄ + b)/(c z̄ + d),
// one of determinant +1 by z ↦ (az + b)/(cz + d); composition is matrix product.
//
// For each ideal vertex v with stabilizer V (infinite dihedral), we conjugate v
// to ∞, take the horoball {y > h}, and measure the horocyclic distance between
// a fundamental segment τ of V and its images. A_s collects the elements moving
// τ by at most 2π. A congruence quotient mod p whose kernel avoids every A_s and
// is torsion free gives cusp cross-sections all of whose closed geodesics are
// longer than 2π.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxref/coxeter_matrix.hpp"
#include "coxref/errors.hpp"
#include "coxref/interval.hpp"
#include "coxref/rational.hpp"
#include "coxref/tits.hpp"

namespace coxref {

struct Mat2 {
  Rational a, b, c, d;

  Rational det() const { return a * d - b * c; }
  Rational trace() const { return a + d; }
  bool is_scalar() const { return b.is_zero() && c.is_zero() && a == d; }
  Mat2 inverse() const {
    const Rational k = det();
    return {d / k, -b / k, -c / k, a / k};
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  /// Action on a boundary point of R ∪ {∞}; nullopt encodes ∞.
  std::optional<Rational> act(const std::optional<Rational>& x) const {
    if (!x) {
      if (c.is_zero()) return std::nullopt;
      return a / c;
    }
    const Rational den = c * *x + d;
    if (den.is_zero()) return std::nullopt;
    return (a * *x + b) / den;
  }

  std::string str() const { return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]"; }
};

inline Mat2 mat2_identity() { return {1, 0, 0, 1}; }

/// A geodesic of the upper half-plane: vertical line x = center, or semicircle.
struct Side {
  bool vertical = true;
  Rational center;
  Rational radius;  // unused for vertical lines

  std::array<std::optional<Rational>, 2> endpoints() const {
    if (vertical) return {center, std::nullopt};
    return {center - radius, center + radius};
  }
};

struct TriangleModel {
  int p = 0, q = 0;  // m12 = p, m13 = q, m23 = ∞ (0 encodes ∞)
  CoxeterMatrix coxeter;
  std::array<Mat2, 3> generators;
  std::array<Side, 3> sides;

  Mat2 evaluate(const Word& w) const {
    Mat2 m = mat2_identity();
    for (int s : w) m = m * generators[static_cast<std::size_t>(s)];
    return m;
  }
};

namespace detail {

/// tr²/det for an orientation-preserving product; equals 4cos²(π/m).
inline bool product_has_order(const Mat2& prod, int m) {
  const Rational ratio = prod.trace() * prod.trace() / prod.det();
  switch (m) {
    case kInf: return ratio == Rational(4) && !prod.is_scalar();
    case 2: return ratio == Rational(0);
    case 3: return ratio == Rational(1);
    case 4: return ratio == Rational(2);
    case 6: return ratio == Rational(3);
    default: return false;
  }
}

}  // namespace detail

/// Verifies involutions, mirrors and relation orders; throws std::logic_error on failure.
inline void verify_model(const TriangleModel& m) {
  for (int i = 0; i < 3; ++i) {
    const Mat2& s = m.generators[static_cast<std::size_t>(i)];
    if (s.det().sign() >= 0) throw std::logic_error("triangle model: generator is not orientation reversing");
    if (!(s * s).is_scalar()) throw std::logic_error("triangle model: generator is not an involution");
    for (const auto& e : m.sides[static_cast<std::size_t>(i)].endpoints())
      if (s.act(e) != e) throw std::logic_error("triangle model: generator does not fix its side");
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Mat2 prod = m.generators[static_cast<std::size_t>(i)] * m.generators[static_cast<std::size_t>(j)];
      if (!detail::product_has_order(prod, m.coxeter(i, j)))
        throw std::logic_error("triangle model: product s" + std::to_string(i + 1) + "s" + std::to_string(j + 1) +
                               " has the wrong order");
    }
}

/// Supported (p, q): (2,3), (2,∞), (∞,∞); m23 = ∞.
inline TriangleModel build_triangle_model(int p, int q) {
  TriangleModel m;
  m.p = p;
  m.q = q;
  const Side unit_circle{false, Rational(0), Rational(1)};
  const Side axis{true, Rational(0), Rational(0)};
  if (p == 2 && q == 3) {
    m.generators = {Mat2{0, 1, 1, 0}, Mat2{-1, 0, 0, 1}, Mat2{-1, 1, 0, 1}};
    m.sides = {unit_circle, axis, Side{true, Rational(1, 2), Rational(0)}};
  } else if (p == 2 && q == kInf) {
    m.generators = {Mat2{0, 1, 1, 0}, Mat2{-1, 0, 0, 1}, Mat2{-1, 2, 0, 1}};
    m.sides = {unit_circle, axis, Side{true, Rational(1), Rational(0)}};
  } else if (p == kInf && q == kInf) {
    m.generators = {Mat2{1, 0, 2, -1}, Mat2{-1, 0, 0, 1}, Mat2{-1, 2, 0, 1}};
    m.sides = {Side{false, Rational(1, 2), Rational(1, 2)}, axis, Side{true, Rational(1), Rational(0)}};
  } else {
    throw DomainError("build_triangle_model: unsupported parameters (" + label_string(p) + "," + label_string(q) +
                      ",inf); supported: (2,3), (2,inf), (inf,inf)");
  }
  m.coxeter = CoxeterMatrix::commuting(3).with(0, 1, p).with(0, 2, q).with(1, 2, kInf);
  verify_model(m);
  return m;
}

// ---------------------------------------------------------------- cusps

struct CuspData {
  int s = 0;                  // the generator opposite the ideal vertex
  std::array<int, 2> pair{};  // V_s = <pair[0], pair[1]>, pair[0] the left mirror at ∞
  std::optional<Rational> vertex;  // nullopt: ∞
  Mat2 conjugator;            // integral, det 1, sends the vertex to ∞
  Rational left, right;       // mirror positions after conjugation, left < right
  Rational width;             // translation length of V_s on the line, = 2(right - left)
  Rational h;                 // horoball {y > h} after conjugation
  Rational tau_length() const { return right - left; }
};

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/// Mirror position c of a reflection fixing ∞: z ↦ -z̄ + 2c.
inline Rational vertical_mirror(const Mat2& r) {
  if (!r.c.is_zero()) throw std::logic_error("vertical_mirror: reflection does not fix infinity");
  return r.b / (Rational(2) * r.d);
}

}  // namespace detail

/// Ideal vertices of the model, one per pair with label ∞.
inline std::vector<CuspData> model_cusps(const TriangleModel& m, const Rational& h) {
  if (h.sign() <= 0) throw std::invalid_argument("model_cusps: h must be positive");
  // Sufficient condition for disjoint horoballs: all matrices are integral, so
  // every horoball image at a/c has diameter 1/(c² h) with |c| >= 1, and two
  // horoballs based at distinct points are disjoint once h·h >= 1.
  for (const auto& g : m.generators)
    for (const auto& e : {g.a, g.b, g.c, g.d})
      if (!e.is_integer()) throw DomainError("model_cusps: disjointness check needs integral generators");
  if (h < Rational(1)) throw DomainError("model_cusps: horoballs of height " + h.str() + " < 1 may overlap");
  std::vector<CuspData> out;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (!m.coxeter.is_infinite(i, j)) continue;
      CuspData c;
      c.s = 3 - i - j;
      const Mat2 par = m.generators[static_cast<std::size_t>(i)] * m.generators[static_cast<std::size_t>(j)];
      if (par.c.is_zero()) {
        c.vertex = std::nullopt;
        c.conjugator = mat2_identity();
      } else {
        const Rational v = (par.a - par.d) / (Rational(2) * par.c);
        c.vertex = v;
        std::int64_t x, y;
        const std::int64_t pn = v.num(), qd = v.den();
        detail::ext_gcd(pn, qd, x, y);  // x p + y q = 1
        c.conjugator = Mat2{x, y, -qd, pn};
      }
      const Mat2 inv = c.conjugator.inverse();
      Rational ci = detail::vertical_mirror(c.conjugator * m.generators[static_cast<std::size_t>(i)] * inv);
      Rational cj = detail::vertical_mirror(c.conjugator * m.generators[static_cast<std::size_t>(j)] * inv);
      c.pair = {i, j};
      if (cj < ci) {
        std::swap(ci, cj);
        c.pair = {j, i};
      }
      c.left = ci;
      c.right = cj;
      c.width = Rational(2) * (cj - ci);
      c.h = h;
      out.push_back(c);
    }
  return out;
}

// ---------------------------------------------------------------- A_s

struct VElement {
  bool translation = true;
  int k = 0;        // translation t^k, or reflection t^k·a
  Word word;        // over the model generators (0-based)
  Mat2 matrix;      // in model coordinates
  Rational gap;     // Euclidean gap between τ and its image on the line
  Rational displacement() const { return gap; }
};

namespace detail {

/// t = b·a translates by the width; a = left mirror, b = right mirror.
inline Word v_word(const CuspData& c, bool translation, int k) {
  const int a = c.pair[0], b = c.pair[1];
  Word w;
  if (k > 0)
    for (int i = 0; i < k; ++i) w.insert(w.end(), {b, a});
  if (k < 0)
    for (int i = 0; i < -k; ++i) w.insert(w.end(), {a, b});
  if (!translation) {
    if (!w.empty() && w.back() == a) {
      w.pop_back();
    } else {
      w.push_back(a);
    }
  }
  return w;
}

/// Gap between τ = [left, right] and its image, in units of the line.
inline Rational v_gap(const CuspData& c, bool translation, int k) {
  const Rational w = c.width;
  if (translation) return Rational(std::abs(k)) * w - c.tau_length();
  // reflection t^k a has mirror at left + k w / 2 and maps τ onto [left + kw - w/2, left + kw]
  if (k >= 1) return Rational(k - 1) * w;
  return Rational(-k) * w;
}

}  // namespace detail

inline VElement v_element(const TriangleModel& m, const CuspData& c, bool translation, int k) {
  VElement e;
  e.translation = translation;
  e.k = k;
  e.word = detail::v_word(c, translation, k);
  e.matrix = m.evaluate(e.word);
  e.gap = detail::v_gap(c, translation, k) / c.h;
  return e;
}

/// A_s = {v ∈ V_s ∖ {1} : dist(τ, vτ) <= 2π}, with 2π replaced by the upper end
/// of its rational enclosure (a superset is safe for avoidance).
inline std::vector<VElement> compute_As(const TriangleModel& m, const CuspData& c) {
  const Rational bound = two_pi_enclosure().hi;
  std::vector<VElement> out;
  // Gaps grow linearly in |k|; scan until both families exceed the bound.
  int K = 1;
  while (detail::v_gap(c, true, K) / c.h <= bound || detail::v_gap(c, false, K) / c.h <= bound ||
         detail::v_gap(c, false, -K) / c.h <= bound)
    ++K;
  for (int k = -K; k <= K; ++k) {
    if (k != 0 && detail::v_gap(c, true, k) / c.h <= bound) out.push_back(v_element(m, c, true, k));
    if (detail::v_gap(c, false, k) / c.h <= bound) out.push_back(v_element(m, c, false, k));
  }
  return out;
}

// ------------------------------------------------------ congruence search

struct ModMat {
  std::int64_t a, b, c, d;
  bool is_scalar() const { return b == 0 && c == 0 && a == d; }
};

namespace detail {

inline std::int64_t mod(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t x, std::int64_t p) {
  std::int64_t u, v;
  ext_gcd(mod(x, p), p, u, v);
  return mod(u, p);
}

inline std::int64_t reduce_rational(const Rational& r, std::int64_t p) {
  return mod(mod(r.num(), p) * inv_mod(r.den(), p), p);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

inline ModMat reduce_mod(const Mat2& m, std::int64_t p) {
  return {detail::reduce_rational(m.a, p), detail::reduce_rational(m.b, p), detail::reduce_rational(m.c, p),
          detail::reduce_rational(m.d, p)};
}

struct ParabolicCheck {
  Subset generators;
  int order = 0;
  bool injective = false;
};

struct AsImage {
  int cusp = 0;
  VElement element;
  ModMat image;
};

struct AvoidanceCertificate {
  std::int64_t prime = 0;
  std::vector<CuspData> cusps;
  std::vector<std::vector<VElement>> As;  // per cusp
  std::vector<AsImage> images;
  std::vector<ParabolicCheck> parabolics;
  std::vector<std::pair<std::int64_t, std::string>> rejected;  // prime, reason
};

namespace detail {

/// Elements of the finite special subgroups (single generators and finite-label pairs).
inline std::vector<std::pair<Subset, std::vector<Word>>> finite_parabolics(const TriangleModel& m) {
  std::vector<std::pair<Subset, std::vector<Word>>> out;
  for (int i = 0; i < 3; ++i) out.push_back({{i}, {{i}}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const int mij = m.coxeter(i, j);
      if (mij == kInf) continue;
      std::vector<Word> elems;
      for (int k = 0; k < mij; ++k) {
        Word rot = power_word({i, j}, k);
        if (k > 0) elems.push_back(rot);
        Word refl = rot;
        refl.push_back(i);
        elems.push_back(refl);
      }
      out.push_back({{i, j}, elems});
    }
  return out;
}

}  // namespace detail

/// Smallest prime p <= cap such that reduction mod p is nontrivial (projectively)
/// on every A_s element and injective on every finite special subgroup.
inline AvoidanceCertificate congruence_search(const TriangleModel& m, const std::vector<CuspData>& cusps,
                                              std::int64_t prime_cap = 100) {
  if (prime_cap < 5) throw std::invalid_argument("congruence_search: prime cap must be >= 5");
  AvoidanceCertificate cert;
  cert.cusps = cusps;
  for (const auto& c : cusps) cert.As.push_back(compute_As(m, c));
  const auto parabolics = detail::finite_parabolics(m);
  std::vector<std::int64_t> orders;
  for (const auto& [gens, elems] : parabolics) orders.push_back(static_cast<std::int64_t>(elems.size()) + 1);
  for (std::int64_t p = 2; p <= prime_cap; ++p) {
    if (!detail::is_prime(p)) continue;
    std::string reason;
    for (const auto& g : m.generators)
      for (const auto& e : {g.a, g.b, g.c, g.d})
        if (e.den() % p == 0) reason = "divides a denominator";
    for (auto o : orders)
      if (reason.empty() && o % p == 0) reason = "divides the order " + std::to_string(o) + " of a finite parabolic";
    std::vector<ParabolicCheck> table;
    if (reason.empty()) {
      for (const auto& [gens, elems] : parabolics) {
        ParabolicCheck pc{gens, static_cast<int>(elems.size()) + 1, true};
        for (const auto& w : elems)
          if (reduce_mod(m.evaluate(w), p).is_scalar()) pc.injective = false;
        if (!pc.injective && reason.empty()) reason = "finite parabolic does not inject";
        table.push_back(pc);
      }
    }
    std::vector<AsImage> images;
    if (reason.empty()) {
      for (std::size_t ci = 0; ci < cert.As.size() && reason.empty(); ++ci)
        for (const auto& e : cert.As[ci]) {
          ModMat img = reduce_mod(e.matrix, p);
          if (img.is_scalar()) {
            reason = "A_s element " + word_to_string(e.word) + " is trivial mod p";
            break;
          }
          images.push_back({static_cast<int>(ci), e, img});
        }
    }
    if (!reason.empty()) {
      cert.rejected.emplace_back(p, reason);
      continue;
    }
    cert.prime = p;
    cert.parabolics = std::move(table);
    cert.images = std::move(images);
    return cert;
  }
  std::string diag;
  for (const auto& [p, why] : cert.rejected) diag += " " + std::to_string(p) + ": " + why + ";";
  throw DomainError("congruence_search: no prime <= " + std::to_string(prime_cap) + " works;" + diag);
}

// ------------------------------------------------------ 2π certificate

struct TwoPiMargin {
  int cusp = 0;
  VElement shortest;            // kernel element of V_s with least displacement
  Rational displacement;        // exact
  RationalInterval margin;      // displacement - 2π
  std::int64_t translation_order = 0;  // order of t in PGL2(F_p)
};

inline TwoPiMargin two_pi_certificate(const TriangleModel& m, const AvoidanceCertificate& cert, int cusp_index) {
  if (cert.prime == 0) throw std::invalid_argument("two_pi_certificate: no prime in certificate");
  const CuspData& c = cert.cusps.at(static_cast<std::size_t>(cusp_index));
  const std::int64_t p = cert.prime;
  // Order of t in PGL2(F_p) is at most p(p²-1).
  const Mat2 t = m.evaluate(detail::v_word(c, true, 1));
  std::int64_t order = 0;
  ModMat acc{1, 0, 0, 1};
  const ModMat tm = reduce_mod(t, p);
  for (std::int64_t k = 1; k <= p * (p * p - 1); ++k) {
    acc = {detail::mod(acc.a * tm.a + acc.b * tm.c, p), detail::mod(acc.a * tm.b + acc.b * tm.d, p),
           detail::mod(acc.c * tm.a + acc.d * tm.c, p), detail::mod(acc.c * tm.b + acc.d * tm.d, p)};
    if (acc.is_scalar()) {
      order = k;
      break;
    }
  }
  if (order == 0) throw std::logic_error("two_pi_certificate: translation has no finite order mod p");
  TwoPiMargin out;
  out.cusp = cusp_index;
  out.translation_order = order;
  bool have = false;
  auto consider = [&](bool translation, int k) {
    VElement e = v_element(m, c, translation, k);
    if (!reduce_mod(e.matrix, p).is_scalar()) return;
    if (!have || e.gap < out.displacement) {
      out.displacement = e.gap;
      out.shortest = e;
      have = true;
    }
  };
  consider(true, static_cast<int>(order));
  for (int k = -static_cast<int>(order); k <= static_cast<int>(order); ++k) consider(false, k);
  if (!have) throw std::logic_error("two_pi_certificate: empty kernel");
  out.margin = out.displacement - two_pi_enclosure();
  if (!out.margin.certainly_positive())
    throw std::logic_error("two_pi_certificate: kernel element moves the fundamental segment by at most 2pi");
  return out;
}

}  // namespace coxref
