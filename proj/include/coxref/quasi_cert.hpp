#pragma once

// Counting quasimorphisms on free Coxeter groups and the lower bounds they give
// for conjugation-invariant word lengths.
//
// H_w(g) = #occurrences of w in the reduced form of g minus #occurrences of w⁻¹
// (overlaps counted). Its homogenization φ_w is conjugation invariant, and a
// product of n reflections g satisfies |φ(g)| <= n (M + D_φ), where M bounds
// |φ| on generators and D_φ is the defect of φ.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "coxref/coxeter_matrix.hpp"
#include "coxref/errors.hpp"
#include "coxref/free_coxeter.hpp"
#include "coxref/parallel.hpp"
#include "coxref/rational.hpp"
#include "coxref/reflength.hpp"

namespace coxref {

namespace detail {

inline int count_occurrences(std::span<const int> text, std::span<const int> pat) {
  if (pat.empty() || pat.size() > text.size()) return 0;
  int c = 0;
  for (std::size_t i = 0; i + pat.size() <= text.size(); ++i)
    if (std::equal(pat.begin(), pat.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) ++c;
  return c;
}

inline int counting_qm_raw(std::span<const int> text, std::span<const int> w, std::span<const int> w_inv) {
  return count_occurrences(text, w) - count_occurrences(text, w_inv);
}

}  // namespace detail

/// H_w(g) on the reduced form of g.
inline int counting_qm(const FreeCoxeterWord& w, const FreeCoxeterWord& g) {
  if (w.empty()) throw std::invalid_argument("counting_qm: empty pattern");
  const FreeCoxeterWord red = reduce_word(g.k, g.letters);
  const FreeCoxeterWord inv = inverse(w);
  return detail::counting_qm_raw(red.letters, w.letters, inv.letters);
}

struct DefectResult {
  int defect = 0;  // D_H over the window
  FreeCoxeterWord g, h;  // attaining pair
  int window = 0;
  std::vector<int> per_window;  // per_window[b] = max over pairs with |g|,|h| <= b
  bool stabilized = false;
  bool certified = true;  // false for sampling runs
  std::uint64_t pairs = 0;
};

struct DefectOptions {
  int threads = 1;
  std::uint64_t pair_cap = 4'000'000'000ull;
};

/// Exact maximum of |H_w(gh) - H_w(g) - H_w(h)| over reduced g, h of length <= B.
inline DefectResult defect_window(const FreeCoxeterWord& w, int B, const DefectOptions& opts = {}) {
  if (w.empty()) throw std::invalid_argument("defect_window: empty pattern");
  if (B < static_cast<int>(w.size())) throw std::invalid_argument("defect_window: window must be >= |w|");
  const int k = w.k;
  std::uint64_t words = 0;
  for (int n = 0; n <= B; ++n) {
    const std::uint64_t c = reduced_word_count(k, n);
    if (c == UINT64_MAX || words + c < words) throw ResourceCapError("defect_window: window too large");
    words += c;
  }
  if (words > std::numeric_limits<std::uint32_t>::max() || words * words > opts.pair_cap)
    throw ResourceCapError("defect_window: " + std::to_string(words) + "^2 pairs exceed the cap; use a smaller window or sampling");
  const auto all = enumerate_reduced(k, B);
  const FreeCoxeterWord winv = inverse(w);
  std::vector<int> H(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) H[i] = detail::counting_qm_raw(all[i].letters, w.letters, winv.letters);

  struct Best {
    int value = -1;
    std::size_t g = 0, h = 0;
  };
  const std::size_t slots = static_cast<std::size_t>(resolve_threads(opts.threads));
  std::vector<std::vector<Best>> parts(slots, std::vector<Best>(static_cast<std::size_t>(B) + 1));
  parallel_chunks(all.size(), opts.threads, [&](int c, std::size_t b, std::size_t e) {
    auto& best = parts[static_cast<std::size_t>(c)];
    std::vector<int> buf;
    for (std::size_t gi = b; gi < e; ++gi) {
      const auto& g = all[gi].letters;
      for (std::size_t hi = 0; hi < all.size(); ++hi) {
        const auto& h = all[hi].letters;
        std::size_t cancel = 0;
        while (cancel < g.size() && cancel < h.size() && g[g.size() - 1 - cancel] == h[cancel]) ++cancel;
        buf.assign(g.begin(), g.end() - static_cast<std::ptrdiff_t>(cancel));
        buf.insert(buf.end(), h.begin() + static_cast<std::ptrdiff_t>(cancel), h.end());
        const int v = std::abs(detail::counting_qm_raw(buf, w.letters, winv.letters) - H[gi] - H[hi]);
        const auto size = std::max(g.size(), h.size());
        if (v > best[size].value) best[size] = {v, gi, hi};
      }
    }
  });
  std::vector<Best> merged(static_cast<std::size_t>(B) + 1);
  for (const auto& part : parts)
    for (std::size_t s = 0; s < merged.size(); ++s)
      if (part[s].value > merged[s].value) merged[s] = part[s];

  DefectResult res;
  res.window = B;
  res.pairs = words * words;
  res.per_window.resize(static_cast<std::size_t>(B) + 1);
  Best cum;
  for (std::size_t s = 0; s < merged.size(); ++s) {
    if (merged[s].value > cum.value) cum = merged[s];
    res.per_window[s] = std::max(cum.value, 0);
  }
  res.defect = res.per_window.back();
  res.g = all[cum.g];
  res.h = all[cum.h];
  const auto n = res.per_window.size();
  res.stabilized = B >= 3 * static_cast<int>(w.size()) && n >= 3 && res.per_window[n - 1] == res.per_window[n - 2] &&
                   res.per_window[n - 2] == res.per_window[n - 3];
  return res;
}

/// Non-certified estimate from random pairs of reduced words of length <= max_length.
inline DefectResult defect_sample(const FreeCoxeterWord& w, int max_length, std::uint64_t samples, std::uint64_t seed) {
  if (w.empty()) throw std::invalid_argument("defect_sample: empty pattern");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, max_length);
  DefectResult res;
  res.window = max_length;
  res.certified = false;
  res.pairs = samples;
  res.per_window.assign(static_cast<std::size_t>(max_length) + 1, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto g = random_reduced(w.k, len(rng), rng);
    auto h = random_reduced(w.k, len(rng), rng);
    const int v = std::abs(counting_qm(w, g * h) - counting_qm(w, g) - counting_qm(w, h));
    if (v > res.defect) {
      res.defect = v;
      res.g = g;
      res.h = h;
    }
  }
  std::fill(res.per_window.begin(), res.per_window.end(), res.defect);
  return res;
}

/// φ_w(g) = lim H_w(gⁿ)/n, read off once the first differences are constant.
inline Rational homogenize(const FreeCoxeterWord& w, const FreeCoxeterWord& g, int n_cap = 256) {
  if (w.empty()) throw std::invalid_argument("homogenize: empty pattern");
  const FreeCoxeterWord red = reduce_word(g.k, g.letters);
  // Elements conjugate to a letter (or trivial) have finite order.
  if (cyclic_core(red).size() <= 1) return Rational(0);
  const int need = static_cast<int>(w.size()) + 2;
  FreeCoxeterWord p{g.k, {}};
  int prev = 0, prev_diff = 0, run = 0;
  for (int n = 1; n <= n_cap; ++n) {
    p = p * red;
    const int h = counting_qm(w, p);
    const int diff = h - prev;
    if (n > 1 && diff == prev_diff) {
      if (++run >= need) return Rational(diff);
    } else {
      run = 1;
    }
    prev_diff = diff;
    prev = h;
  }
  throw ResourceCapError("homogenize: differences did not stabilize within " + std::to_string(n_cap) + " powers");
}

struct QuasimorphismCert {
  int k = 0;
  FreeCoxeterWord pattern;
  int raw_defect = 0;   // D_H
  Rational defect_phi;  // D_φ = 2 D_H
  Rational generator_max;  // M
  Rational constant;       // C = 1/(M + D_φ)
  int window = 0;
  bool stabilized = false;
  bool certified = false;
  DefectResult defect;
};

/// Builds the certificate for pattern w in W_k (k >= 3, w cyclically reduced).
inline QuasimorphismCert build_certificate(const FreeCoxeterWord& w, int window = 0, const DefectOptions& opts = {}) {
  if (w.k < 3) throw DomainError("build_certificate: free Coxeter groups W_k need k >= 3");
  if (w.empty()) throw DomainError("build_certificate: empty pattern");
  if (!(reduce_word(w.k, w.letters) == w)) throw DomainError("build_certificate: pattern is not reduced");
  if (!is_cyclically_reduced(w)) throw DomainError("build_certificate: pattern is not cyclically reduced");
  if (window == 0) window = 3 * static_cast<int>(w.size());
  QuasimorphismCert cert;
  cert.k = w.k;
  cert.pattern = w;
  cert.window = window;
  cert.defect = defect_window(w, window, opts);
  cert.raw_defect = cert.defect.defect;
  cert.stabilized = cert.defect.stabilized;
  cert.certified = cert.defect.certified && cert.stabilized;
  cert.defect_phi = Rational(2 * cert.raw_defect);
  Rational m(0);
  for (int x = 0; x < w.k; ++x) m = std::max(m, abs(homogenize(w, FreeCoxeterWord{w.k, {x}})));
  cert.generator_max = m;
  const Rational denom = cert.generator_max + cert.defect_phi;
  if (denom.sign() == 0) throw DomainError("build_certificate: M + D_phi = 0, the quasimorphism is trivial");
  cert.constant = Rational(1) / denom;
  return cert;
}

struct CertifiedBounds {
  Rational constant;
  Rational phi;
  bool vacuous = false;  // φ(g) = 0
  std::vector<std::pair<int, std::int64_t>> bounds;  // (k, lower bound for ||g^k||_R)
};

inline CertifiedBounds certify_lower_bound(const QuasimorphismCert& cert, const FreeCoxeterWord& g, int K) {
  if (!cert.certified) throw DomainError("certify_lower_bound: defect window not stabilized; refusing to certify");
  CertifiedBounds out;
  out.constant = cert.constant;
  out.phi = homogenize(cert.pattern, g);
  out.vacuous = out.phi.sign() == 0;
  for (int k = 1; k <= K; ++k) out.bounds.emplace_back(k, (Rational(k) * abs(out.phi) * cert.constant).ceil());
  return out;
}

/// True for W_k: every off-diagonal label is ∞.
inline bool is_free_coxeter(const CoxeterMatrix& cm) {
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = i + 1; j < cm.rank(); ++j)
      if (!cm.is_infinite(i, j)) return false;
  return cm.rank() >= 1;
}

/// Registers the certificate as a lower bound for reflection length in W_k.
inline LowerBoundCertificate as_reflength_certificate(const QuasimorphismCert& cert) {
  if (!cert.certified) throw DomainError("as_reflength_certificate: certificate is not stabilized");
  return LowerBoundCertificate{"quasimorphism:" + to_string(cert.pattern), [cert](const GroupElement&, const Word& reduced) {
                                 FreeCoxeterWord g = reduce_word(cert.k, reduced);
                                 return static_cast<int>((abs(homogenize(cert.pattern, g)) * cert.constant).ceil());
                               }};
}

}  // namespace coxref
