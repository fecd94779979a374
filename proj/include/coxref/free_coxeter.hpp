#pragma once

// Words in the free Coxeter group W_k = Z/2 * ... * Z/2 (k factors). Letters
// are 0-based; the reduced form has no two equal adjacent letters, and the
// inverse of a reduced word is its reversal.

#include <cctype>
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxref {

struct FreeCoxeterWord {
  int k = 0;
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const FreeCoxeterWord&, const FreeCoxeterWord&) = default;
  friend auto operator<=>(const FreeCoxeterWord&, const FreeCoxeterWord&) = default;
};

/// Cancels equal adjacent letters with a stack (the result does not depend on cancellation order).
inline FreeCoxeterWord reduce_word(int k, const std::vector<int>& letters) {
  if (k < 1) throw std::invalid_argument("reduce_word: alphabet size must be >= 1");
  FreeCoxeterWord out{k, {}};
  for (int x : letters) {
    if (x < 0 || x >= k) throw std::invalid_argument("reduce_word: letter " + std::to_string(x + 1) + " out of range");
    if (!out.letters.empty() && out.letters.back() == x) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(x);
    }
  }
  return out;
}

inline FreeCoxeterWord inverse(const FreeCoxeterWord& w) {
  return FreeCoxeterWord{w.k, std::vector<int>(w.letters.rbegin(), w.letters.rend())};
}

inline FreeCoxeterWord operator*(const FreeCoxeterWord& a, const FreeCoxeterWord& b) {
  std::vector<int> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return reduce_word(a.k, cat);
}

inline FreeCoxeterWord power(const FreeCoxeterWord& w, int n) {
  FreeCoxeterWord base = n < 0 ? inverse(w) : w;
  FreeCoxeterWord out{w.k, {}};
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

/// Cyclically reduced: reduced and first letter differs from last (or length <= 1).
inline bool is_cyclically_reduced(const FreeCoxeterWord& w) {
  return w.letters.size() <= 1 || w.letters.front() != w.letters.back();
}

/// Writes w = u c u⁻¹ with c cyclically reduced; returns c.
inline FreeCoxeterWord cyclic_core(const FreeCoxeterWord& w) {
  std::size_t b = 0, e = w.letters.size();
  while (e - b >= 2 && w.letters[b] == w.letters[e - 1]) {
    ++b;
    --e;
  }
  return FreeCoxeterWord{w.k, std::vector<int>(w.letters.begin() + static_cast<std::ptrdiff_t>(b),
                                               w.letters.begin() + static_cast<std::ptrdiff_t>(e))};
}

/// Parses "abc", "a b c" or "1 2 3" (1-based digits) and reduces.
inline FreeCoxeterWord parse_free_word(const std::string& text, int k) {
  std::vector<int> letters;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    letters.push_back(std::stoi(digits) - 1);
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      flush();
      letters.push_back(c - 'a');
    } else if (c == ' ' || c == ',' || c == '\t') {
      flush();
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in free word");
    }
  }
  flush();
  return reduce_word(k, letters);
}

inline std::string to_string(const FreeCoxeterWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (int x : w.letters) {
    if (w.k <= 26) {
      out += static_cast<char>('a' + x);
    } else {
      if (!out.empty()) out += ' ';
      out += std::to_string(x + 1);
    }
  }
  return out;
}

/// Number of reduced words of length exactly n.
inline std::uint64_t reduced_word_count(int k, int n) {
  if (n == 0) return 1;
  std::uint64_t c = static_cast<std::uint64_t>(k);
  for (int i = 1; i < n; ++i) {
    if (c > UINT64_MAX / static_cast<std::uint64_t>(k)) return UINT64_MAX;
    c *= static_cast<std::uint64_t>(k - 1);
  }
  return c;
}

/// All reduced words of length <= B, ordered by length then lexicographically.
inline std::vector<FreeCoxeterWord> enumerate_reduced(int k, int B) {
  std::vector<FreeCoxeterWord> out{{k, {}}};
  std::size_t begin = 0;
  for (int len = 1; len <= B; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int x = 0; x < k; ++x) {
        if (!out[i].letters.empty() && out[i].letters.back() == x) continue;
        FreeCoxeterWord w = out[i];
        w.letters.push_back(x);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

/// Uniform random reduced word of the given length.
template <class Rng>
FreeCoxeterWord random_reduced(int k, int length, Rng& rng) {
  if (k < 2 && length > 1) throw std::invalid_argument("random_reduced: W_1 has no reduced words of length > 1");
  FreeCoxeterWord w{k, {}};
  std::uniform_int_distribution<int> first(0, k - 1), next(0, std::max(0, k - 2));
  for (int i = 0; i < length; ++i) {
    if (i == 0) {
      w.letters.push_back(first(rng));
    } else {
      int x = next(rng);
      if (x >= w.letters.back()) ++x;
      w.letters.push_back(x);
    }
  }
  return w;
}

}  // namespace coxref
