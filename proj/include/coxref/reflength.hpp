#pragma once

// Reflection length ||w||_R and bracketing bounds.
//
// Upper bounds come from breadth-first search over a Cayley ball using the
// reflections of root depth <= D as edges; the value is non-increasing in D.
// Lower bounds: parity, codimension of the fixed space, the deletion bound,
// and any registered external certificates.
//
// Deletion bound: ||w||_R is the least number of letters that must be deleted
// from a reduced word of w to leave a word for the identity. Excluding all
// deletion sets of size < k therefore certifies ||w||_R >= k, and a deletion
// set of size k yields an explicit factorization into k reflections.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxref/classify.hpp"
#include "coxref/errors.hpp"
#include "coxref/parallel.hpp"
#include "coxref/reflections.hpp"
#include "coxref/tits.hpp"

namespace coxref {

enum class ReflStatus { Exact, Bracketed };

inline std::string to_string(ReflStatus s) { return s == ReflStatus::Exact ? "Exact" : "Bracketed"; }

/// A named lower bound valid for every element of a fixed group.
struct LowerBoundCertificate {
  std::string name;
  std::function<int(const GroupElement&, const Word& reduced)> bound;
};

struct ReflLenOptions {
  int threads = 1;
  std::size_t node_cap = 5'000'000;
  std::uint64_t deletion_budget = 1ull << 22;  // search nodes per element
  bool use_deletion_bound = true;
  std::vector<LowerBoundCertificate> certificates;
};

struct ReflLenResult {
  GroupElement element;
  Word reduced;
  int standard_length = 0;
  std::optional<int> upper;  // nullopt: unreached
  int lower = 0;
  ReflStatus status = ReflStatus::Bracketed;
  std::vector<Word> witness;  // reflection words, product in order equals element
  int depth_used = 0;
  std::optional<int> bfs_upper;  // ball search value at depth_used
  std::string lower_source;
  int certificate_lower = 0;  // best registered certificate value (0 if none)
};

namespace detail {

inline void ensure_invariants(const ReflLenResult& r) {
  if (r.upper) {
    if (r.lower > *r.upper) throw std::logic_error("reflection length: lower bound exceeds upper bound");
    if ((*r.upper - r.standard_length) % 2 != 0) throw std::logic_error("reflection length: parity violated");
    if (static_cast<int>(r.witness.size()) != *r.upper) throw std::logic_error("reflection length: witness size");
  }
  if ((r.status == ReflStatus::Exact) != (r.upper && *r.upper == r.lower))
    throw std::logic_error("reflection length: status inconsistent with bounds");
}

}  // namespace detail

// ---------------------------------------------------------------- Cayley ball

struct CayleyBall {
  int radius = 0;
  std::vector<GroupElement> elements;  // level by level, keys sorted within a level
  std::vector<int> length;
  std::vector<std::string> keys;
  std::unordered_map<std::string, int> index;
  bool capped = false;

  int find(const GroupElement& g) const {
    auto it = index.find(canonical_key(g));
    return it == index.end() ? -1 : it->second;
  }
};

inline CayleyBall cayley_ball(const TitsRepresentation& rep, int radius, const ReflLenOptions& opts = {}) {
  if (radius < 0) throw std::invalid_argument("cayley_ball: radius must be >= 0");
  CayleyBall ball;
  ball.radius = radius;
  auto add = [&](GroupElement g, std::string key, int len) {
    ball.index.emplace(key, static_cast<int>(ball.elements.size()));
    ball.keys.push_back(std::move(key));
    ball.elements.push_back(std::move(g));
    ball.length.push_back(len);
  };
  add(rep.identity(), canonical_key(rep.identity()), 0);
  std::size_t level_begin = 0;
  const std::size_t slots = static_cast<std::size_t>(resolve_threads(opts.threads));
  for (int len = 1; len <= radius; ++len) {
    const std::size_t level_end = ball.elements.size();
    std::vector<std::map<std::string, GroupElement>> parts(slots);
    parallel_chunks(level_end - level_begin, opts.threads, [&](int c, std::size_t b, std::size_t e) {
      auto& out = parts[static_cast<std::size_t>(c)];
      for (std::size_t i = level_begin + b; i < level_begin + e; ++i) {
        const auto& g = ball.elements[i];
        for (int s = 0; s < rep.rank(); ++s) {
          if (rep.is_right_descent(g, s)) continue;
          GroupElement h = rep.times_generator(g, s);
          std::string key = canonical_key(h);
          if (!out.count(key)) out.emplace(std::move(key), std::move(h));
        }
      }
    });
    std::map<std::string, GroupElement> next;
    for (auto& part : parts)
      for (auto& [k, g] : part) next.emplace(k, std::move(g));
    if (ball.elements.size() + next.size() > opts.node_cap) {
      ball.capped = true;
      break;
    }
    for (auto& [k, g] : next) add(std::move(g), k, len);
    level_begin = level_end;
    if (next.empty()) break;
  }
  return ball;
}

// ------------------------------------------------------- reflection distance

struct ReflectionDistances {
  std::vector<int> dist;  // -1: unreached
  std::vector<int> parent;
  std::vector<int> via;  // index into the reflection list
};

/// Breadth-first search from the identity with edges w -> w·r, both ends in the ball.
/// Ties are broken by (parent index, reflection index), independent of threads.
inline ReflectionDistances reflection_distances(const CayleyBall& ball, const std::vector<Reflection>& refl,
                                                int threads = 1) {
  const std::size_t n = ball.elements.size();
  ReflectionDistances out{std::vector<int>(n, -1), std::vector<int>(n, -1), std::vector<int>(n, -1)};
  if (n == 0) return out;
  out.dist[0] = 0;
  std::vector<int> frontier{0};
  const std::size_t slots = static_cast<std::size_t>(resolve_threads(threads));
  for (int d = 1; !frontier.empty(); ++d) {
    struct Hit {
      int target, parent, via;
    };
    std::vector<std::vector<Hit>> parts(slots);
    parallel_chunks(frontier.size(), threads, [&](int c, std::size_t b, std::size_t e) {
      auto& hits = parts[static_cast<std::size_t>(c)];
      for (std::size_t i = b; i < e; ++i) {
        const int x = frontier[i];
        const auto& gx = ball.elements[static_cast<std::size_t>(x)].matrix();
        for (std::size_t r = 0; r < refl.size(); ++r) {
          GroupElement y(gx * refl[r].element.matrix());
          auto it = ball.index.find(canonical_key(y));
          if (it == ball.index.end() || out.dist[static_cast<std::size_t>(it->second)] >= 0) continue;
          hits.push_back({it->second, x, static_cast<int>(r)});
        }
      }
    });
    std::vector<int> next;
    for (const auto& hits : parts)
      for (const auto& h : hits) {
        auto t = static_cast<std::size_t>(h.target);
        if (out.dist[t] >= 0) continue;
        out.dist[t] = d;
        out.parent[t] = h.parent;
        out.via[t] = h.via;
        next.push_back(h.target);
      }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<Word> distance_witness(const ReflectionDistances& rd, const std::vector<Reflection>& refl, int target) {
  std::vector<Word> w;
  for (int x = target; rd.parent[static_cast<std::size_t>(x)] >= 0; x = rd.parent[static_cast<std::size_t>(x)])
    w.push_back(refl[static_cast<std::size_t>(rd.via[static_cast<std::size_t>(x)])].word());
  std::reverse(w.begin(), w.end());
  return w;
}

// ----------------------------------------------------------- deletion bound

struct DeletionSearch {
  int excluded_below = 0;          // every deletion set of size < this fails
  std::optional<int> found;        // size of a successful deletion set
  std::vector<std::size_t> positions;
  bool exhausted_budget = false;
};

/// Looks for a deletion set of size k for k = from, from+2, ... < stop (k ≡ |word| mod 2).
inline DeletionSearch deletion_search(const TitsRepresentation& rep, const Word& word, int from, int stop,
                                      std::uint64_t budget) {
  const int n = static_cast<int>(word.size());
  DeletionSearch res;
  if ((from - n) % 2 != 0) ++from;
  from = std::max(from, 0);
  res.excluded_below = from;
  // inv_suffix[i] = (s_i ... s_{n-1})⁻¹
  std::vector<ZMatrix> inv_suffix(static_cast<std::size_t>(n) + 1);
  inv_suffix[static_cast<std::size_t>(n)] = rep.identity().matrix();
  for (int i = n - 1; i >= 0; --i)
    inv_suffix[static_cast<std::size_t>(i)] =
        inv_suffix[static_cast<std::size_t>(i) + 1] * rep.generator(word[static_cast<std::size_t>(i)]).matrix();
  std::uint64_t nodes = 0;
  std::vector<std::size_t> deleted;
  bool out_of_budget = false;
  std::function<bool(int, const ZMatrix&, int)> dfs = [&](int i, const ZMatrix& prefix, int remaining) -> bool {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (remaining == 0) return prefix == inv_suffix[static_cast<std::size_t>(i)];
    if (n - i < remaining) return false;
    deleted.push_back(static_cast<std::size_t>(i));
    if (dfs(i + 1, prefix, remaining - 1)) return true;
    deleted.pop_back();
    if (out_of_budget) return false;
    return dfs(i + 1, prefix * rep.generator(word[static_cast<std::size_t>(i)]).matrix(), remaining);
  };
  const ZMatrix id = rep.identity().matrix();
  for (int k = from; k < stop && k <= n; k += 2) {
    deleted.clear();
    if (dfs(0, id, k)) {
      res.found = k;
      res.positions = deleted;
      res.excluded_below = k;
      return res;
    }
    if (out_of_budget) {
      res.exhausted_budget = true;
      return res;
    }
    res.excluded_below = k + 2;
  }
  res.excluded_below = std::max(res.excluded_below, from);
  if (res.excluded_below > stop) res.excluded_below = stop;
  return res;
}

/// Reflection words t_k, ..., t_1 with product word[] for a successful deletion set.
inline std::vector<Word> deletion_witness(const Word& word, const std::vector<std::size_t>& positions) {
  std::vector<Word> out;
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
    const std::size_t p = *it;
    Word t(word.rbegin(), word.rend() - static_cast<std::ptrdiff_t>(p) - 1);
    t.push_back(word[p]);
    t.insert(t.end(), word.begin() + static_cast<std::ptrdiff_t>(p) + 1, word.end());
    out.push_back(std::move(t));
  }
  return out;
}

// --------------------------------------------------------- bound assembly

namespace detail {

/// Combines a ball-search value with all lower bounds into a ReflLenResult.
inline ReflLenResult assemble(const TitsRepresentation& rep, const GroupElement& g, const Word& reduced,
                              std::optional<int> bfs_upper, std::vector<Word> bfs_witness, int depth,
                              const ReflLenOptions& opts) {
  ReflLenResult r;
  r.element = GroupElement(g.matrix(), reduced);
  r.reduced = reduced;
  r.standard_length = static_cast<int>(reduced.size());
  r.depth_used = depth;
  r.bfs_upper = bfs_upper;
  r.upper = bfs_upper;
  r.witness = std::move(bfs_witness);
  const int parity = r.standard_length % 2;

  auto raise = [&](int v, const char* source) {
    if (v > r.lower) {
      r.lower = v;
      r.lower_source = source;
    }
  };
  r.lower_source = "trivial";
  if (r.standard_length > 0) raise(parity == 1 ? 1 : 2, "parity");
  int codim = fixed_space_codim(g);
  if (codim % 2 != parity) ++codim;
  raise(codim, "fixed-space");
  for (const auto& cert : opts.certificates) {
    int v = cert.bound(r.element, reduced);
    r.certificate_lower = std::max(r.certificate_lower, v);
    if (v % 2 != parity) ++v;
    if (v > r.lower) {
      r.lower = v;
      r.lower_source = cert.name;
    }
  }
  if (opts.use_deletion_bound && (!r.upper || r.lower < *r.upper)) {
    const int stop = r.upper ? *r.upper : r.standard_length + 1;
    auto ds = deletion_search(rep, reduced, r.lower, stop, opts.deletion_budget);
    if (ds.found) {
      r.upper = *ds.found;
      r.witness = deletion_witness(reduced, ds.positions);
      raise(*ds.found, "deletion");
    } else {
      raise(ds.excluded_below, "deletion");
    }
  }
  r.status = (r.upper && *r.upper == r.lower) ? ReflStatus::Exact : ReflStatus::Bracketed;
  ensure_invariants(r);
  return r;
}

}  // namespace detail

// ------------------------------------------------------------ operations

struct ReflLenBall {
  CayleyBall ball;
  int depth = 0;
  std::vector<Reflection> reflections;
  ReflectionDistances distances;
  std::vector<ReflLenResult> results;  // aligned with ball.elements
  bool capped() const { return ball.capped; }
};

/// Reflection length bounds for every element of standard length <= L using reflections of depth <= D.
inline ReflLenBall reflen_ball(const TitsRepresentation& rep, int L, int D, const ReflLenOptions& opts = {}) {
  if (L < 0 || D < 0) throw std::invalid_argument("reflen_ball: L and D must be >= 0");
  ReflLenBall out;
  out.depth = D;
  out.ball = cayley_ball(rep, L, opts);
  out.reflections = enumerate_reflections(rep, D);
  out.distances = reflection_distances(out.ball, out.reflections, opts.threads);
  const std::size_t n = out.ball.elements.size();
  out.results.resize(n);
  parallel_chunks(n, opts.threads, [&](int, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto& g = out.ball.elements[i];
      const Word reduced = g.word() ? *g.word() : rep.reduced_word(g);
      const int d = out.distances.dist[i];
      std::optional<int> upper;
      std::vector<Word> wit;
      if (d >= 0) {
        upper = d;
        wit = distance_witness(out.distances, out.reflections, static_cast<int>(i));
      }
      out.results[i] = detail::assemble(rep, g, reduced, upper, std::move(wit), D, opts);
    }
  });
  return out;
}

inline ReflLenBall reflen_ball(const CoxeterMatrix& cm, int L, int D, const ReflLenOptions& opts = {}) {
  return reflen_ball(TitsRepresentation(cm), L, D, opts);
}

struct ReflLenProtocol {
  int d_start = 1;
  int d_cap = 12;
  int stable_increments = 2;
  ReflLenOptions options;
};

/// Reflection length of a single element: increasing reflection depth until the
/// ball-search value is unchanged for `stable_increments` steps, it meets a lower
/// bound, or the depth cap is reached.
inline ReflLenResult reflen_element(const TitsRepresentation& rep, const Word& word, const ReflLenProtocol& proto = {}) {
  const GroupElement g = rep.evaluate(word);
  const Word reduced = rep.reduced_word(g);
  const int len = static_cast<int>(reduced.size());
  // Cheap lower bounds first, to know when the search may stop early.
  ReflLenOptions cheap = proto.options;
  cheap.use_deletion_bound = false;
  const int floor = detail::assemble(rep, g, reduced, std::nullopt, {}, 0, cheap).lower;

  std::optional<int> best;
  std::vector<Word> witness;
  int depth = std::max(0, proto.d_start);
  CayleyBall ball = cayley_ball(rep, len, proto.options);
  const int target = ball.find(g);
  if (ball.capped || target < 0) {
    return detail::assemble(rep, g, reduced, std::nullopt, {}, depth, proto.options);
  }
  std::optional<int> prev;
  int unchanged = 0;
  for (int d = depth;; ++d) {
    auto refl = enumerate_reflections(rep, d);
    auto rd = reflection_distances(ball, refl, proto.options.threads);
    std::optional<int> cur;
    const int dist = rd.dist[static_cast<std::size_t>(target)];
    if (dist >= 0) cur = dist;
    if (prev && cur && *cur > *prev)
      throw std::logic_error("reflen_element: upper bound increased with depth");
    if (cur && (!best || *cur < *best)) {
      best = cur;
      witness = distance_witness(rd, refl, target);
    }
    depth = d;
    if (cur && prev && *cur == *prev) {
      ++unchanged;
    } else {
      unchanged = 0;
    }
    prev = cur;
    if (best && *best <= floor) break;
    if (unchanged >= proto.stable_increments) break;
    if (d >= proto.d_cap) break;
  }
  return detail::assemble(rep, g, reduced, best, std::move(witness), depth, proto.options);
}

inline ReflLenResult reflen_element(const CoxeterMatrix& cm, const Word& word, const ReflLenProtocol& proto = {}) {
  return reflen_element(TitsRepresentation(cm), word, proto);
}

/// Reflection length in a finite group via rank(M - I).
inline int carter_length_finite(const TitsRepresentation& rep, const Word& word) {
  if (classify_group(rep.coxeter_matrix()).kind != GroupKind::Spherical)
    throw DomainError("carter_length_finite: group is not spherical");
  return fixed_space_codim(rep.evaluate(word));
}

struct AffineBoundReport {
  int n = 0;  // rank minus number of components
  int two_n = 0;
  int radius = 0;
  int depth = 0;
  int max_exact = 0;
  bool attained = false;
  std::size_t elements = 0;
  std::size_t exact = 0;
  std::vector<Word> maximizers;  // reduced words attaining max_exact (at most 8)
};

inline AffineBoundReport affine_bound_experiment(const TitsRepresentation& rep, int L, int D, const ReflLenOptions& opts = {}) {
  const auto verdict = classify_group(rep.coxeter_matrix());
  for (const auto& c : verdict.components)
    if (c.kind != GroupKind::AffineEuclidean)
      throw DomainError("affine_bound_experiment: every component must be affine Euclidean");
  AffineBoundReport rep_out;
  rep_out.n = rep.rank() - static_cast<int>(verdict.components.size());
  rep_out.two_n = 2 * rep_out.n;
  rep_out.radius = L;
  rep_out.depth = D;
  auto ball = reflen_ball(rep, L, D, opts);
  if (ball.capped()) throw ResourceCapError("affine_bound_experiment: node cap reached");
  rep_out.elements = ball.results.size();
  for (const auto& r : ball.results) {
    if (r.status != ReflStatus::Exact) continue;
    ++rep_out.exact;
    if (*r.upper > rep_out.max_exact) {
      rep_out.max_exact = *r.upper;
      rep_out.maximizers.clear();
    }
    if (*r.upper == rep_out.max_exact && rep_out.maximizers.size() < 8) rep_out.maximizers.push_back(r.reduced);
  }
  if (rep_out.exact == 0) throw DomainError("affine_bound_experiment: no Exact values in the ball");
  if (rep_out.max_exact > rep_out.two_n)
    throw std::logic_error("affine_bound_experiment: Exact value exceeds 2n");
  rep_out.attained = rep_out.max_exact == rep_out.two_n;
  return rep_out;
}

struct GrowthRecord {
  Word base;
  std::string metric_name = "reflection";
  std::vector<std::pair<int, ReflLenResult>> powers;

  /// Running maximum of certified lower bounds.
  std::vector<int> lower_envelope() const {
    std::vector<int> env;
    int m = 0;
    for (const auto& [k, r] : powers) {
      m = std::max(m, r.lower);
      env.push_back(m);
    }
    return env;
  }
};

inline GrowthRecord growth_profile(const TitsRepresentation& rep, const Word& g, int K, const ReflLenProtocol& proto = {}) {
  if (K < 1) throw std::invalid_argument("growth_profile: K must be >= 1");
  GrowthRecord rec;
  rec.base = g;
  for (int k = 1; k <= K; ++k) rec.powers.emplace_back(k, reflen_element(rep, power_word(g, k), proto));
  return rec;
}

}  // namespace coxref
