#pragma once

// Spherical / affine / non-affine classification of Coxeter groups and their
// special subgroups, decided by exact signs of Gram minors.

#include <algorithm>
#include <string>
#include <vector>

#include "coxref/coxeter_matrix.hpp"
#include "coxref/errors.hpp"
#include "coxref/gram.hpp"

namespace coxref {

enum class GroupKind { Spherical, AffineEuclidean, NonAffine };

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Spherical: return "Spherical";
    case GroupKind::AffineEuclidean: return "AffineEuclidean";
    case GroupKind::NonAffine: return "NonAffine";
  }
  return "?";
}

struct ComponentVerdict {
  Subset generators;
  GroupKind kind;
};

struct TypeVerdict {
  GroupKind kind = GroupKind::Spherical;
  std::vector<ComponentVerdict> components;
  bool minimal_nonaffine = false;

  /// Affine in the sense of a product of spherical and Euclidean factors.
  bool affine() const { return kind != GroupKind::NonAffine; }
};

/// Connected components of the Coxeter diagram restricted to `subset`.
inline std::vector<Subset> irreducible_components(const CoxeterMatrix& cm, const Subset& subset) {
  std::vector<Subset> out;
  std::vector<bool> seen(static_cast<std::size_t>(cm.rank()), false);
  std::vector<bool> in(static_cast<std::size_t>(cm.rank()), false);
  for (int s : subset) in[static_cast<std::size_t>(s)] = true;
  for (int start : subset) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    Subset comp;
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u = 0; u < cm.rank(); ++u) {
        if (in[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)] && cm.adjacent(u, v)) {
          seen[static_cast<std::size_t>(u)] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<Subset> irreducible_components(const CoxeterMatrix& cm) {
  Subset all(static_cast<std::size_t>(cm.rank()));
  std::iota(all.begin(), all.end(), 0);
  return irreducible_components(cm, all);
}

/// Kind of the irreducible special subgroup on `subset` (must be connected).
inline GroupKind classify_component(const CoxeterMatrix& cm, const GramMatrix& gm, const Subset& subset) {
  if (subset.empty()) return GroupKind::Spherical;
  if (irreducible_components(cm, subset).size() != 1) {
    throw std::invalid_argument("classify_component: generator subset is not a single irreducible component");
  }
  const ZMatrix sub = gm.doubled_submatrix(subset);
  bool positive_definite = true;
  for (const auto& minor : leading_principal_minors(sub)) {
    if (sub.field()->sign(std::span<const std::int64_t>(minor)) <= 0) {
      positive_definite = false;
      break;
    }
  }
  if (positive_definite) return GroupKind::Spherical;
  Inertia in = symmetric_inertia(sub);
  if (in.negative == 0 && in.zero == 1) return GroupKind::AffineEuclidean;
  return GroupKind::NonAffine;
}

inline GroupKind classify_component(const CoxeterMatrix& cm, const Subset& subset) {
  return classify_component(cm, GramMatrix(cm), subset);
}

inline GroupKind combine_kinds(const std::vector<ComponentVerdict>& comps) {
  bool all_spherical = true;
  for (const auto& c : comps) {
    if (c.kind == GroupKind::NonAffine) return GroupKind::NonAffine;
    if (c.kind != GroupKind::Spherical) all_spherical = false;
  }
  return all_spherical ? GroupKind::Spherical : GroupKind::AffineEuclidean;
}

/// Kind of the special subgroup generated by `subset` (possibly reducible).
inline GroupKind classify_special_subgroup(const CoxeterMatrix& cm, const GramMatrix& gm, const Subset& subset) {
  std::vector<ComponentVerdict> comps;
  for (auto& c : irreducible_components(cm, subset)) {
    GroupKind k = classify_component(cm, gm, c);
    comps.push_back({std::move(c), k});
  }
  return combine_kinds(comps);
}

inline TypeVerdict classify_group(const CoxeterMatrix& cm) {
  const GramMatrix gm(cm);
  TypeVerdict v;
  for (auto& c : irreducible_components(cm)) {
    GroupKind k = classify_component(cm, gm, c);
    v.components.push_back({std::move(c), k});
  }
  v.kind = combine_kinds(v.components);
  if (v.kind == GroupKind::NonAffine) {
    // Special subgroups of affine groups are affine, so the maximal proper ones suffice.
    v.minimal_nonaffine = true;
    for (int s = 0; s < cm.rank(); ++s) {
      Subset rest;
      for (int t = 0; t < cm.rank(); ++t)
        if (t != s) rest.push_back(t);
      if (classify_special_subgroup(cm, gm, rest) == GroupKind::NonAffine) {
        v.minimal_nonaffine = false;
        break;
      }
    }
  }
  return v;
}

/// All inclusion-minimal T ⊆ S whose special subgroup is non-affine.
inline std::vector<Subset> minimal_nonaffine_subsets(const CoxeterMatrix& cm) {
  const int n = cm.rank();
  if (n > 20) throw ResourceCapError("minimal_nonaffine_subsets: rank too large for subset enumeration");
  const GramMatrix gm(cm);
  const std::uint32_t count = 1u << n;
  // Non-affineness is upward closed, so T is minimal iff every T \ {t} is affine.
  std::vector<signed char> nonaffine(count, -1);
  auto subset_of = [n](std::uint32_t mask) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    return s;
  };
  auto is_nonaffine = [&](std::uint32_t mask) {
    if (nonaffine[mask] < 0) {
      nonaffine[mask] = classify_special_subgroup(cm, gm, subset_of(mask)) == GroupKind::NonAffine ? 1 : 0;
    }
    return nonaffine[mask] == 1;
  };
  if (!is_nonaffine(count - 1)) throw DomainError("minimal_nonaffine_subsets: group is affine");
  std::vector<Subset> out;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    if (!is_nonaffine(mask)) continue;
    bool minimal = true;
    for (int t = 0; t < n && minimal; ++t) {
      if ((mask & (1u << t)) && is_nonaffine(mask & ~(1u << t))) minimal = false;
    }
    if (minimal) out.push_back(subset_of(mask));
  }
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace coxref
