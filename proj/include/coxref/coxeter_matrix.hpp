#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxref/errors.hpp"

namespace coxref {

/// Order label m_ij. Zero encodes ∞ (the same encoding the JSON input uses).
constexpr int kInf = 0;

using Subset = std::vector<int>;  // sorted 0-based generator indices

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Validates symmetry, unit diagonal and m_ij >= 2 (or ∞) off the diagonal.
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries, std::vector<std::string> labels = {})
      : m_(std::move(entries)), labels_(std::move(labels)) {
    const int n = rank();
    if (n < 1) throw ParseError("coxeter matrix must have rank >= 1");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(m_[static_cast<std::size_t>(i)].size()) != n) {
        throw ParseError("coxeter matrix row has wrong length", i + 1, 0);
      }
    }
    for (int i = 0; i < n; ++i) {
      if ((*this)(i, i) != 1) throw ParseError("diagonal entry must be 1", i + 1, i + 1);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int v = (*this)(i, j);
        if (v != (*this)(j, i)) throw ParseError("asymmetric entries", i + 1, j + 1);
        if (v != kInf && v < 2) throw ParseError("off-diagonal entry must be >= 2 or inf", i + 1, j + 1);
      }
    }
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n) throw ParseError("label count differs from rank");
  }

  /// All off-diagonal entries default to 2.
  static CoxeterMatrix commuting(int rank) {
    std::vector<std::vector<int>> e(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 2));
    for (int i = 0; i < rank; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return CoxeterMatrix(std::move(e));
  }

  /// Free Coxeter group on k generators: every m_ij = ∞.
  static CoxeterMatrix free_group(int k) {
    std::vector<std::vector<int>> e(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), kInf));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return CoxeterMatrix(std::move(e));
  }

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  bool is_infinite(int i, int j) const { return (*this)(i, j) == kInf; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& entries() const { return m_; }

  /// Diagram edge: m_ij >= 3 or ∞.
  bool adjacent(int i, int j) const { return i != j && (*this)(i, j) != 2; }

  CoxeterMatrix with(int i, int j, int value) const {
    auto e = m_;
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
    e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = value;
    return CoxeterMatrix(std::move(e), labels_);
  }

  /// The special subgroup on `subset`, generators renumbered in order.
  CoxeterMatrix restrict(const Subset& subset) const {
    std::vector<std::vector<int>> e;
    for (int i : subset) {
      std::vector<int> row;
      for (int j : subset) row.push_back((*this)(i, j));
      e.push_back(std::move(row));
    }
    std::vector<std::string> lab;
    if (!labels_.empty()) {
      for (int i : subset) lab.push_back(labels_[static_cast<std::size_t>(i)]);
    }
    return CoxeterMatrix(std::move(e), std::move(lab));
  }

  CoxeterMatrix permuted(const std::vector<int>& perm) const {
    std::vector<std::vector<int>> e(m_.size(), std::vector<int>(m_.size()));
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    return CoxeterMatrix(std::move(e));
  }

  /// Block-diagonal sum: generators of `other` follow those of `this`, commuting with them.
  CoxeterMatrix direct_sum(const CoxeterMatrix& other) const {
    const int n = rank() + other.rank();
    std::vector<std::vector<int>> e(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
    for (int i = 0; i < other.rank(); ++i)
      for (int j = 0; j < other.rank(); ++j)
        e[static_cast<std::size_t>(rank() + i)][static_cast<std::size_t>(rank() + j)] = other(i, j);
    return CoxeterMatrix(std::move(e));
  }

  /// The text form accepted by parse_coxeter_matrix.
  std::string to_string() const {
    std::ostringstream os;
    os << "rank " << rank() << ";";
    for (int i = 0; i < rank(); ++i)
      for (int j = i + 1; j < rank(); ++j) {
        if ((*this)(i, j) == 2) continue;
        os << " m" << (i + 1) << (rank() > 9 ? "_" : "") << (j + 1) << "=";
        if (is_infinite(i, j)) {
          os << "inf";
        } else {
          os << (*this)(i, j);
        }
      }
    return os.str();
  }

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) { return a.m_ == b.m_; }

 private:
  std::vector<std::vector<int>> m_;
  std::vector<std::string> labels_;
};

namespace detail {

inline int parse_label_value(std::string_view v, int row, int col) {
  if (v == "inf" || v == "oo" || v == "∞") return kInf;
  if (v.empty()) throw ParseError("missing value", row, col);
  int out = 0;
  for (char c : v) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed value '" + std::string(v) + "'", row, col);
    out = out * 10 + (c - '0');
    if (out > 1000000) throw ParseError("value too large", row, col);
  }
  return out;
}

}  // namespace detail

/// Parses `rank <k>` followed by whitespace-separated `m<i><j>=<v>` assignments
/// (1-based; `m<i>_<j>` also accepted; ';' and newlines are separators).
/// Unassigned pairs default to 2.
inline CoxeterMatrix parse_coxeter_matrix(std::string_view text) {
  std::string normalized(text);
  for (char& c : normalized) {
    if (c == ';' || c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::string tok;
  if (!(in >> tok) || tok != "rank") throw ParseError("expected 'rank <k>'");
  int rank = 0;
  if (!(in >> tok)) throw ParseError("missing rank value");
  try {
    std::size_t pos = 0;
    rank = std::stoi(tok, &pos);
    if (pos != tok.size()) throw ParseError("malformed rank '" + tok + "'");
  } catch (const std::logic_error&) {
    throw ParseError("malformed rank '" + tok + "'");
  }
  if (rank < 1) throw ParseError("rank must be >= 1");
  if (rank > 64) throw ParseError("rank too large");

  std::vector<std::vector<int>> e(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 2));
  std::vector<std::vector<bool>> set(static_cast<std::size_t>(rank), std::vector<bool>(static_cast<std::size_t>(rank), false));
  for (int i = 0; i < rank; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

  while (in >> tok) {
    if (tok.size() < 4 || tok[0] != 'm') throw ParseError("malformed assignment '" + tok + "'");
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("missing '=' in '" + tok + "'");
    std::string idx = tok.substr(1, eq - 1);
    std::string val = tok.substr(eq + 1);
    int i = 0, j = 0;
    if (auto us = idx.find('_'); us != std::string::npos) {
      try {
        i = std::stoi(idx.substr(0, us));
        j = std::stoi(idx.substr(us + 1));
      } catch (const std::logic_error&) {
        throw ParseError("malformed indices in '" + tok + "'");
      }
    } else {
      if (idx.size() != 2 || !std::isdigit(static_cast<unsigned char>(idx[0])) ||
          !std::isdigit(static_cast<unsigned char>(idx[1]))) {
        throw ParseError("malformed indices in '" + tok + "'");
      }
      i = idx[0] - '0';
      j = idx[1] - '0';
    }
    if (i < 1 || j < 1 || i > rank || j > rank) throw ParseError("index out of range in '" + tok + "'", i, j);
    int v = detail::parse_label_value(val, i, j);
    if (i == j) {
      if (v != 1) throw ParseError("diagonal entry must be 1", i, j);
      continue;
    }
    if (v != kInf && v < 2) throw ParseError("off-diagonal entry must be >= 2 or inf", i, j);
    auto& a = e[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    auto& b = e[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
    auto seen = set[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    auto seen_t = set[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
    if ((seen || seen_t) && a != v) throw ParseError("asymmetric entries", i, j);
    a = b = v;
    seen = seen_t = true;
  }
  return CoxeterMatrix(std::move(e));
}

/// Structured input: either a bare matrix `[[1,3],[3,1]]` or an object with a
/// "matrix" array (and optional "labels"). ∞ is encoded as 0.
inline CoxeterMatrix coxeter_matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json* mat = &j;
  std::vector<std::string> labels;
  if (j.is_object()) {
    if (!j.contains("matrix")) throw ParseError("structured input lacks a 'matrix' field");
    mat = &j.at("matrix");
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  }
  if (!mat->is_array()) throw ParseError("'matrix' must be an array of rows");
  std::vector<std::vector<int>> e;
  int r = 0;
  for (const auto& row : *mat) {
    ++r;
    if (!row.is_array()) throw ParseError("matrix row is not an array", r, 0);
    std::vector<int> out;
    int c = 0;
    for (const auto& v : row) {
      ++c;
      if (!v.is_number_integer()) throw ParseError("matrix entry is not an integer", r, c);
      out.push_back(v.get<int>());
    }
    e.push_back(std::move(out));
  }
  return CoxeterMatrix(std::move(e), std::move(labels));
}

inline nlohmann::json coxeter_matrix_to_json(const CoxeterMatrix& cm) {
  nlohmann::json j;
  j["matrix"] = cm.entries();
  if (!cm.labels().empty()) j["labels"] = cm.labels();
  return j;
}

inline std::string label_string(int m) { return m == kInf ? "inf" : std::to_string(m); }

/// Every subset of {0..n-1} as a sorted index list, ordered by bitmask.
inline std::vector<Subset> all_subsets(int n) {
  std::vector<Subset> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace coxref
