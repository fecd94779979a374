#pragma once

// Built-in table of the irreducible spherical and Euclidean Coxeter diagrams
// of rank <= 5, and diagram recognition up to relabelling of generators.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coxref/classify.hpp"
#include "coxref/coxeter_matrix.hpp"

namespace coxref {

struct CatalogEntry {
  std::string name;
  GroupKind kind;
  CoxeterMatrix matrix;
};

namespace detail {

inline CoxeterMatrix diagram(int rank, const std::vector<std::tuple<int, int, int>>& edges) {
  auto cm = CoxeterMatrix::commuting(rank);
  for (auto [i, j, m] : edges) cm = cm.with(i, j, m);
  return cm;
}

inline CoxeterMatrix path(const std::vector<int>& labels) {
  std::vector<std::tuple<int, int, int>> e;
  for (std::size_t i = 0; i < labels.size(); ++i) e.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1, labels[i]);
  return diagram(static_cast<int>(labels.size()) + 1, e);
}

inline CoxeterMatrix cycle(int rank) {
  std::vector<std::tuple<int, int, int>> e;
  for (int i = 0; i < rank; ++i) e.emplace_back(i, (i + 1) % rank, 3);
  return diagram(rank, e);
}

}  // namespace detail

/// Lexicographically smallest relabelling; equal keys iff isomorphic diagrams.
inline std::vector<int> canonical_form(const CoxeterMatrix& cm) {
  std::vector<int> perm(static_cast<std::size_t>(cm.rank()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> flat;
    flat.reserve(perm.size() * perm.size());
    for (int i : perm)
      for (int j : perm) flat.push_back(cm(i, j));
    if (best.empty() || flat < best) best = std::move(flat);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Irreducible spherical and Euclidean diagrams of rank <= 5.
inline const std::vector<CatalogEntry>& builtin_catalog() {
  using detail::cycle;
  using detail::diagram;
  using detail::path;
  static const std::vector<CatalogEntry> catalog = [] {
    const auto S = GroupKind::Spherical;
    const auto E = GroupKind::AffineEuclidean;
    std::vector<CatalogEntry> c;
    c.push_back({"A1", S, CoxeterMatrix::commuting(1)});
    for (int n = 2; n <= 5; ++n) c.push_back({"A" + std::to_string(n), S, path(std::vector<int>(static_cast<std::size_t>(n - 1), 3))});
    for (int n = 3; n <= 5; ++n) {
      std::vector<int> labels(static_cast<std::size_t>(n - 1), 3);
      labels.back() = 4;
      c.push_back({"B" + std::to_string(n), S, path(labels)});
    }
    c.push_back({"D4", S, diagram(4, {{0, 1, 3}, {1, 2, 3}, {1, 3, 3}})});
    c.push_back({"D5", S, diagram(5, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}})});
    c.push_back({"F4", S, path({3, 4, 3})});
    c.push_back({"H3", S, path({5, 3})});
    c.push_back({"H4", S, path({5, 3, 3})});
    for (int m : {4, 5, 6}) c.push_back({"I2(" + std::to_string(m) + ")", S, path({m})});

    c.push_back({"~A1", E, path({kInf})});
    for (int n = 3; n <= 5; ++n) c.push_back({"~A" + std::to_string(n - 1), E, cycle(n)});
    c.push_back({"~C2", E, path({4, 4})});
    c.push_back({"~G2", E, path({6, 3})});
    c.push_back({"~B3", E, diagram(4, {{0, 2, 3}, {1, 2, 3}, {2, 3, 4}})});
    c.push_back({"~C3", E, path({4, 3, 4})});
    c.push_back({"~B4", E, diagram(5, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 4}})});
    c.push_back({"~C4", E, path({4, 3, 3, 4})});
    c.push_back({"~D4", E, diagram(5, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}})});
    c.push_back({"~F4", E, path({3, 3, 4, 3})});
    return c;
  }();
  return catalog;
}

/// Catalog entry isomorphic to a connected diagram, if any (rank <= 5).
inline std::optional<CatalogEntry> lookup_catalog(const CoxeterMatrix& cm) {
  static const auto index = [] {
    std::map<std::vector<int>, CatalogEntry> m;
    for (const auto& e : builtin_catalog()) m.emplace(canonical_form(e.matrix), e);
    return m;
  }();
  if (cm.rank() > 5) return std::nullopt;
  auto it = index.find(canonical_form(cm));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

}  // namespace coxref
