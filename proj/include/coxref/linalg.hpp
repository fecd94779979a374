#pragma once

// Division-free exact linear algebra over Z[θ]: minors by Laplace expansion,
// rank, principal minors and characteristic-polynomial coefficients.
// Matrices in scope have rank <= 8, so the subset dynamic program is cheap.

#include <bit>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "coxref/number_field.hpp"

namespace coxref {

/// Dense square matrix with entries in Z[θ], row-major, d coefficients per entry.
class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(FieldPtr field, int n)
      : field_(std::move(field)), n_(n), d_(field_->degree()),
        data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(d_), 0) {}

  static ZMatrix identity(FieldPtr field, int n) {
    ZMatrix m(std::move(field), n);
    for (int i = 0; i < n; ++i) m.entry(i, i)[0] = 1;
    return m;
  }

  const FieldPtr& field() const { return field_; }
  int size() const { return n_; }
  int degree() const { return d_; }

  std::span<std::int64_t> entry(int i, int j) {
    return {data_.data() + offset(i, j), static_cast<std::size_t>(d_)};
  }
  std::span<const std::int64_t> entry(int i, int j) const {
    return {data_.data() + offset(i, j), static_cast<std::size_t>(d_)};
  }
  ExactScalar scalar(int i, int j) const { return ExactScalar::from_ints(field_, entry(i, j)); }

  const std::vector<std::int64_t>& raw() const { return data_; }
  std::vector<std::int64_t>& raw() { return data_; }

  friend ZMatrix operator*(const ZMatrix& a, const ZMatrix& b) {
    ZMatrix c(a.field_, a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        auto aik = a.entry(i, k);
        if (is_zero(aik)) continue;
        for (int j = 0; j < a.n_; ++j) {
          auto bkj = b.entry(k, j);
          if (is_zero(bkj)) continue;
          a.field_->fma(aik, bkj, c.entry(i, j));
        }
      }
    return c;
  }

  friend ZMatrix operator-(const ZMatrix& a, const ZMatrix& b) {
    ZMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = detail::checked_sub(a.data_[i], b.data_[i]);
    return c;
  }

  ZMatrix transpose() const {
    ZMatrix t(field_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) std::copy_n(entry(i, j).begin(), d_, t.entry(j, i).begin());
    return t;
  }

  friend bool operator==(const ZMatrix& a, const ZMatrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

  static bool is_zero(std::span<const std::int64_t> v) {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }

 private:
  std::size_t offset(int i, int j) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) *
           static_cast<std::size_t>(d_);
  }

  FieldPtr field_;
  int n_ = 0;
  int d_ = 1;
  std::vector<std::int64_t> data_;
};

namespace detail {

/// Table of k×k minors indexed by (row mask, column mask), built level by level.
class MinorTable {
 public:
  explicit MinorTable(const ZMatrix& m) : m_(m), d_(static_cast<std::size_t>(m.degree())) {}

  /// Computes every minor of size `k` from the previous level.
  /// Returns false when all of them vanish.
  bool advance() {
    const int n = m_.size();
    const int k = level_ + 1;
    std::unordered_map<std::uint64_t, IntPoly> next;
    bool any = false;
    for (std::uint32_t rows = 0; rows < (1u << n); ++rows) {
      if (std::popcount(rows) != k) continue;
      const int r0 = std::countr_zero(rows);
      const std::uint32_t rest_rows = rows & ~(1u << r0);
      for (std::uint32_t cols = 0; cols < (1u << n); ++cols) {
        if (std::popcount(cols) != k) continue;
        IntPoly acc(d_, 0);
        int pos = 0;
        for (int c = 0; c < n; ++c) {
          if (!(cols & (1u << c))) continue;
          auto a = m_.entry(r0, c);
          if (!ZMatrix::is_zero(a)) {
            IntPoly sub;
            if (k == 1) {
              sub.assign(d_, 0);
              sub[0] = 1;
            } else {
              auto it = cur_.find(key(rest_rows, cols & ~(1u << c)));
              if (it == cur_.end()) {
                ++pos;
                continue;
              }
              sub = it->second;
            }
            IntPoly prod(d_, 0);
            m_.field()->mul(a, sub, prod);
            for (std::size_t t = 0; t < d_; ++t) {
              acc[t] = (pos % 2 == 0) ? checked_add(acc[t], prod[t]) : checked_sub(acc[t], prod[t]);
            }
          }
          ++pos;
        }
        if (!ZMatrix::is_zero(acc)) {
          any = true;
          next.emplace(key(rows, cols), std::move(acc));
        }
      }
    }
    cur_ = std::move(next);
    level_ = k;
    return any;
  }

  int level() const { return level_; }

  /// Minor at the current level; zero vector when absent.
  IntPoly minor(std::uint32_t rows, std::uint32_t cols) const {
    auto it = cur_.find(key(rows, cols));
    if (it == cur_.end()) return IntPoly(d_, 0);
    return it->second;
  }

 private:
  static std::uint64_t key(std::uint32_t r, std::uint32_t c) { return (static_cast<std::uint64_t>(r) << 32) | c; }

  const ZMatrix& m_;
  std::size_t d_;
  int level_ = 0;
  std::unordered_map<std::uint64_t, IntPoly> cur_;  // only nonzero minors are stored
};

}  // namespace detail

/// Exact rank over the field.
inline int exact_rank(const ZMatrix& m) {
  detail::MinorTable table(m);
  int rank = 0;
  while (table.level() < m.size() && table.advance()) rank = table.level();
  return rank;
}

/// e_k = sum of principal k×k minors, for k = 0..n (e_0 = 1).
inline std::vector<IntPoly> principal_minor_sums(const ZMatrix& m) {
  const int n = m.size();
  const auto d = static_cast<std::size_t>(m.degree());
  std::vector<IntPoly> e(static_cast<std::size_t>(n) + 1, IntPoly(d, 0));
  e[0][0] = 1;
  detail::MinorTable table(m);
  for (int k = 1; k <= n; ++k) {
    table.advance();
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if (std::popcount(s) != k) continue;
      auto v = table.minor(s, s);
      for (std::size_t t = 0; t < d; ++t) e[static_cast<std::size_t>(k)][t] = detail::checked_add(e[static_cast<std::size_t>(k)][t], v[t]);
    }
  }
  return e;
}

/// Leading principal minors Δ_1..Δ_n.
inline std::vector<IntPoly> leading_principal_minors(const ZMatrix& m) {
  const int n = m.size();
  std::vector<IntPoly> out;
  detail::MinorTable table(m);
  for (int k = 1; k <= n; ++k) {
    table.advance();
    const std::uint32_t s = (1u << k) - 1;
    out.push_back(table.minor(s, s));
  }
  return out;
}

inline IntPoly determinant(const ZMatrix& m) {
  if (m.size() == 0) {
    IntPoly one(static_cast<std::size_t>(m.degree()), 0);
    one[0] = 1;
    return one;
  }
  return leading_principal_minors(m).back();
}

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Inertia of a symmetric matrix by Descartes' rule on its characteristic
/// polynomial, which is exact because all roots are real.
inline Inertia symmetric_inertia(const ZMatrix& m) {
  const int n = m.size();
  auto e = principal_minor_sums(m);
  // det(xI - A) = Σ_k (-1)^k e_k x^(n-k); a_j is the coefficient of x^j.
  std::vector<int> a(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    int s = m.field()->sign(std::span<const std::int64_t>(e[static_cast<std::size_t>(k)]));
    a[static_cast<std::size_t>(n - k)] = (k % 2 == 0) ? s : -s;
  }
  auto changes = [](const std::vector<int>& seq) {
    int count = 0, last = 0;
    for (int s : seq) {
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  Inertia out;
  while (out.zero <= n && a[static_cast<std::size_t>(out.zero)] == 0) ++out.zero;
  std::vector<int> pos(a.rbegin(), a.rend());
  out.positive = changes(pos);
  std::vector<int> neg(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) neg[static_cast<std::size_t>(n - j)] = (j % 2 == 0) ? a[static_cast<std::size_t>(j)] : -a[static_cast<std::size_t>(j)];
  out.negative = changes(neg);
  return out;
}

}  // namespace coxref
