#pragma once

// Reflections of W as the orbit of the simple roots, enumerated breadth-first
// by root depth.

#include <map>
#include <string>
#include <vector>

#include "coxref/tits.hpp"

namespace coxref {

/// Root coordinates in the simple-root basis, d coefficients per coordinate.
using RootVector = std::vector<std::int64_t>;

struct Reflection {
  GroupElement element;
  RootVector root;  // positive root with B(root, root) = 1
  int depth = 0;    // breadth-first root depth; simple roots have depth 0
  Word conjugator;  // root = conjugator(e_generator), element = conjugator·s·conjugator⁻¹
  int generator = 0;

  /// The palindromic word conjugator·s·conjugator⁻¹.
  Word word() const {
    Word w = conjugator;
    w.push_back(generator);
    w.insert(w.end(), conjugator.rbegin(), conjugator.rend());
    return w;
  }

  ExactScalar coordinate(const FieldPtr& field, int i) const {
    const auto d = static_cast<std::size_t>(field->degree());
    return ExactScalar::from_ints(field, std::span<const std::int64_t>(root.data() + static_cast<std::size_t>(i) * d, d));
  }
};

namespace detail {

/// σ_t(α) = α - 2B(e_t, α) e_t.
inline RootVector reflect_root(const GramMatrix& gm, int t, const RootVector& alpha) {
  const auto d = static_cast<std::size_t>(gm.field()->degree());
  std::vector<std::int64_t> pairing(d, 0);
  for (int k = 0; k < gm.rank(); ++k) {
    std::span<const std::int64_t> ak(alpha.data() + static_cast<std::size_t>(k) * d, d);
    if (ZMatrix::is_zero(ak)) continue;
    gm.field()->fma(gm.doubled().entry(t, k), ak, pairing);
  }
  RootVector out = alpha;
  for (std::size_t c = 0; c < d; ++c) out[static_cast<std::size_t>(t) * d + c] = checked_sub(out[static_cast<std::size_t>(t) * d + c], pairing[c]);
  return out;
}

inline int root_sign(const FieldPtr& field, const RootVector& alpha) {
  const auto d = static_cast<std::size_t>(field->degree());
  for (std::size_t i = 0; i < alpha.size(); i += d) {
    std::span<const std::int64_t> c(alpha.data() + i, d);
    if (!ZMatrix::is_zero(c)) return field->sign(c);
  }
  return 0;
}

inline std::string root_key(const RootVector& r) {
  std::string key(r.size() * sizeof(std::int64_t), '\0');
  std::memcpy(key.data(), r.data(), key.size());
  return key;
}

}  // namespace detail

/// The B-orthogonal reflection x -> x - 2B(α, x) α as a matrix.
inline GroupElement reflection_matrix(const GramMatrix& gm, const RootVector& alpha) {
  const int n = gm.rank();
  const auto d = static_cast<std::size_t>(gm.field()->degree());
  const auto& field = gm.field();
  // row vector (2Bα)_j = Σ_k α_k 2B_kj
  std::vector<std::int64_t> pairing(static_cast<std::size_t>(n) * d, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      std::span<const std::int64_t> ak(alpha.data() + static_cast<std::size_t>(k) * d, d);
      if (ZMatrix::is_zero(ak)) continue;
      field->fma(ak, gm.doubled().entry(k, j), std::span<std::int64_t>(pairing.data() + static_cast<std::size_t>(j) * d, d));
    }
  ZMatrix m = ZMatrix::identity(field, n);
  std::vector<std::int64_t> prod(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      field->mul(std::span<const std::int64_t>(alpha.data() + static_cast<std::size_t>(i) * d, d),
                 std::span<const std::int64_t>(pairing.data() + static_cast<std::size_t>(j) * d, d), prod);
      auto e = m.entry(i, j);
      for (std::size_t c = 0; c < d; ++c) e[c] = detail::checked_sub(e[c], prod[c]);
    }
  return GroupElement(std::move(m));
}

/// All reflections whose positive root has depth <= max_depth, in breadth-first
/// order (sorted by root key within a level). No duplicates.
inline std::vector<Reflection> enumerate_reflections(const TitsRepresentation& rep, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("enumerate_reflections: depth must be >= 0");
  const auto& gm = rep.gram();
  const auto d = static_cast<std::size_t>(rep.field()->degree());
  const int n = rep.rank();
  std::vector<Reflection> out;
  std::map<std::string, bool> seen;
  std::vector<Reflection> level;
  for (int s = 0; s < n; ++s) {
    RootVector e(static_cast<std::size_t>(n) * d, 0);
    e[static_cast<std::size_t>(s) * d] = 1;
    seen.emplace(detail::root_key(e), true);
    level.push_back(Reflection{GroupElement{}, std::move(e), 0, Word{}, s});
  }
  for (int depth = 0; depth <= max_depth && !level.empty(); ++depth) {
    for (auto& r : level) {
      GroupElement el = reflection_matrix(gm, r.root);
      r.element = GroupElement(el.matrix(), r.word());
      out.push_back(r);
    }
    if (depth == max_depth) break;
    std::map<std::string, Reflection> next;
    for (const auto& r : level) {
      for (int t = 0; t < n; ++t) {
        RootVector beta = detail::reflect_root(gm, t, r.root);
        if (detail::root_sign(rep.field(), beta) <= 0) continue;
        std::string key = detail::root_key(beta);
        if (seen.count(key) || next.count(key)) continue;
        Word conj{t};
        conj.insert(conj.end(), r.conjugator.begin(), r.conjugator.end());
        next.emplace(std::move(key), Reflection{GroupElement{}, std::move(beta), depth + 1, std::move(conj), r.generator});
      }
    }
    level.clear();
    for (auto& [key, r] : next) {
      seen.emplace(key, true);
      level.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace coxref
