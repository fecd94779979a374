#pragma once

// The Tits geometric representation W -> GL(V), σ_s(x) = x - 2B(e_s, x) e_s.
// Matrices act on column vectors in the basis of simple roots; all entries lie
// in Z[θ]. Group equality is matrix equality (the representation is faithful).

#include <cctype>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coxref/coxeter_matrix.hpp"
#include "coxref/gram.hpp"
#include "coxref/linalg.hpp"

namespace coxref {

using Word = std::vector<int>;  // 0-based generator indices, applied left to right

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(ZMatrix m, std::optional<Word> word = std::nullopt)
      : matrix_(std::move(m)), word_(std::move(word)) {}

  const ZMatrix& matrix() const { return matrix_; }
  const std::optional<Word>& word() const { return word_; }
  int rank() const { return matrix_.size(); }

  bool is_identity() const { return matrix_ == ZMatrix::identity(matrix_.field(), matrix_.size()); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    std::optional<Word> w;
    if (a.word_ && b.word_) {
      w = *a.word_;
      w->insert(w->end(), b.word_->begin(), b.word_->end());
    }
    return GroupElement(a.matrix_ * b.matrix_, std::move(w));
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.matrix_ == b.matrix_; }

 private:
  ZMatrix matrix_;
  std::optional<Word> word_;
};

/// Injective byte key of the matrix (coefficients serialized in order).
inline std::string canonical_key(const GroupElement& g) {
  const auto& raw = g.matrix().raw();
  std::string key(raw.size() * sizeof(std::int64_t), '\0');
  std::memcpy(key.data(), raw.data(), key.size());
  return key;
}

inline GroupElement tits_generator(const GramMatrix& gm, int s) {
  ZMatrix m = ZMatrix::identity(gm.field(), gm.rank());
  for (int t = 0; t < gm.rank(); ++t) {
    auto src = gm.doubled().entry(s, t);
    auto dst = m.entry(s, t);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = -src[k];
    if (s == t) dst[0] += 1;
  }
  return GroupElement(std::move(m), Word{s});
}

inline GroupElement evaluate_word(std::span<const GroupElement> gens, const Word& word) {
  if (gens.empty()) throw std::invalid_argument("evaluate_word: no generators");
  ZMatrix m = ZMatrix::identity(gens[0].matrix().field(), gens[0].rank());
  for (int s : word) {
    if (s < 0 || s >= static_cast<int>(gens.size())) throw std::out_of_range("evaluate_word: generator index out of range");
    m = m * gens[static_cast<std::size_t>(s)].matrix();
  }
  return GroupElement(std::move(m), word);
}

/// rank(M - I): a product of k reflections fixes a subspace of codimension <= k.
inline int fixed_space_codim(const GroupElement& g) {
  return exact_rank(g.matrix() - ZMatrix::identity(g.matrix().field(), g.rank()));
}

class TitsRepresentation {
 public:
  explicit TitsRepresentation(CoxeterMatrix cm) : cm_(std::move(cm)), gram_(cm_) {
    for (int s = 0; s < cm_.rank(); ++s) gens_.push_back(tits_generator(gram_, s));
  }

  const CoxeterMatrix& coxeter_matrix() const { return cm_; }
  const GramMatrix& gram() const { return gram_; }
  const FieldPtr& field() const { return gram_.field(); }
  int rank() const { return cm_.rank(); }
  std::span<const GroupElement> generators() const { return gens_; }
  const GroupElement& generator(int s) const { return gens_[static_cast<std::size_t>(s)]; }

  GroupElement identity() const { return GroupElement(ZMatrix::identity(field(), rank()), Word{}); }
  GroupElement evaluate(const Word& w) const { return evaluate_word(gens_, w); }

  /// g·s as a matrix (right multiplication only touches column s).
  GroupElement times_generator(const GroupElement& g, int s) const { return g * gens_[static_cast<std::size_t>(s)]; }

  /// ℓ(gs) < ℓ(g) iff g(α_s) is a negative root.
  bool is_right_descent(const GroupElement& g, int s) const {
    for (int i = 0; i < rank(); ++i) {
      auto c = g.matrix().entry(i, s);
      if (!ZMatrix::is_zero(c)) return field()->sign(c) < 0;
    }
    throw std::logic_error("is_right_descent: zero column");
  }

  /// A reduced word for g, built by stripping right descents.
  Word reduced_word(const GroupElement& g, std::size_t max_length = 100000) const {
    Word rev;
    GroupElement cur = g;
    const GroupElement id = identity();
    while (!(cur == id)) {
      int found = -1;
      for (int s = 0; s < rank(); ++s) {
        if (is_right_descent(cur, s)) {
          found = s;
          break;
        }
      }
      if (found < 0) throw std::logic_error("reduced_word: non-identity element without descent");
      rev.push_back(found);
      cur = GroupElement(cur.matrix() * gens_[static_cast<std::size_t>(found)].matrix());
      if (rev.size() > max_length) throw ResourceCapError("reduced_word: length cap exceeded");
    }
    return Word(rev.rbegin(), rev.rend());
  }

  int length(const GroupElement& g) const { return static_cast<int>(reduced_word(g).size()); }

  /// MᵀBM = B.
  bool preserves_form(const GroupElement& g) const {
    return g.matrix().transpose() * gram_.doubled() * g.matrix() == gram_.doubled();
  }

 private:
  CoxeterMatrix cm_;
  GramMatrix gram_;
  std::vector<GroupElement> gens_;
};

inline Word inverse_word(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline Word power_word(const Word& w, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// Parses "1 2 3", "123" or "s1 s2" (1-based) into a 0-based word.
inline Word parse_word(const std::string& text, int rank) {
  Word w;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    int v = std::stoi(digits);
    if (v < 1 || v > rank) throw std::invalid_argument("word letter " + digits + " out of range");
    w.push_back(v - 1);
    digits.clear();
  };
  bool spaced = text.find_first_of(" ,s") != std::string::npos;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (!spaced) flush();
    } else if (c == ' ' || c == ',' || c == 's' || c == '\t') {
      flush();
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in word");
    }
  }
  flush();
  return w;
}

inline std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

}  // namespace coxref
