#pragma once

// Warping function f for a cone metric f(r)² ds_T² + dr² on [r_T, 0]:
// f = (2π/L) sinh(r - r_T) on [r_T, r_a], f = e^r on [r_b, 0], and a C² convex
// bridge on [r_a, r_b]. The bridge is first tried as a quintic Hermite segment;
// if no quintic in the schedule is convex, a bridge with prescribed end
// curvatures and a nonnegative combination of interior bumps is solved from the
// two moment conditions that fix f and f' at r_b.

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "coxref/errors.hpp"

namespace coxref {

struct WarpSample {
  double r, f, fp, fpp;
};

enum class BridgeKind { Quintic, Moment };

inline std::string to_string(BridgeKind k) { return k == BridgeKind::Quintic ? "quintic" : "moment"; }

struct WarpProfile {
  double L = 0, r_T = 0, r_a = 0, r_b = 0;
  BridgeKind kind = BridgeKind::Quintic;
  // quintic: f(r_a + ℓt) = Σ coef[i] t^i
  std::vector<double> quintic;
  // moment bridge: f'' = ca (1-t)^n + cb t^n + alpha t(1-t)^m + beta t^m (1-t)
  int n = 0, m = 0;
  double ca = 0, cb = 0, alpha = 0, beta = 0;
  std::vector<WarpSample> grid;
  double min_fpp_fd = 0;  // smallest central second difference / step²
  double max_abs_f = 0;
  int attempts = 0;

  double scale() const { return 2 * std::numbers::pi / L; }

  /// f, f', f'' at r ∈ [r_T, 0].
  WarpSample eval(double r) const {
    if (r <= r_a) {
      const double k = scale();
      return {r, k * std::sinh(r - r_T), k * std::cosh(r - r_T), k * std::sinh(r - r_T)};
    }
    if (r >= r_b) {
      const double e = std::exp(r);
      return {r, e, e, e};
    }
    return bridge(r);
  }

  bool in_apex_piece(double r) const { return r <= r_a; }
  bool in_boundary_piece(double r) const { return r >= r_b; }

 private:
  WarpSample bridge(double r) const {
    const double len = r_b - r_a;
    const double t = (r - r_a) / len;
    if (kind == BridgeKind::Quintic) {
      double f = 0, d1 = 0, d2 = 0;
      for (int i = 5; i >= 0; --i) f = f * t + quintic[static_cast<std::size_t>(i)];
      for (int i = 5; i >= 1; --i) d1 = d1 * t + i * quintic[static_cast<std::size_t>(i)];
      for (int i = 5; i >= 2; --i) d2 = d2 * t + i * (i - 1) * quintic[static_cast<std::size_t>(i)];
      return {r, f, d1 / len, d2 / (len * len)};
    }
    const auto a = eval(r_a);
    // Primitives of (1-t)^j and t^j vanishing at t = 0.
    auto P1 = [](int j, double t) { return (1 - std::pow(1 - t, j + 1)) / (j + 1); };
    auto P2 = [](int j, double t) { return t / (j + 1) - (1 - std::pow(1 - t, j + 2)) / ((j + 1.0) * (j + 2)); };
    auto Q1 = [](int j, double t) { return std::pow(t, j + 1) / (j + 1); };
    auto Q2 = [](int j, double t) { return std::pow(t, j + 2) / ((j + 1.0) * (j + 2)); };
    const double F0 = ca * std::pow(1 - t, n) + cb * std::pow(t, n) + alpha * t * std::pow(1 - t, m) +
                      beta * std::pow(t, m) * (1 - t);
    const double F1 = ca * P1(n, t) + cb * Q1(n, t) + alpha * (P1(m, t) - P1(m + 1, t)) + beta * (Q1(m, t) - Q1(m + 1, t));
    const double F2 = ca * P2(n, t) + cb * Q2(n, t) + alpha * (P2(m, t) - P2(m + 1, t)) + beta * (Q2(m, t) - Q2(m + 1, t));
    return {r, a.f + a.fp * len * t + len * len * F2, a.fp + len * F1, F0};
  }
};

struct WarpOptions {
  int grid = 512;
  double tolerance = 1e-9;  // f'' >= -tolerance · max|f|
};

namespace detail {

/// Quintic with prescribed value, slope and curvature (scaled to t ∈ [0,1]) at both ends.
inline std::vector<double> quintic_hermite(double f0, double d0, double s0, double f1, double d1, double s1) {
  // c0..c2 from the left end; c3..c5 from the right end conditions.
  const double c0 = f0, c1 = d0, c2 = s0 / 2;
  const double r0 = f1 - (c0 + c1 + c2);
  const double r1 = d1 - (c1 + 2 * c2);
  const double r2 = s1 - 2 * c2;
  // [1 1 1; 3 4 5; 6 12 20] [c3 c4 c5] = [r0 r1 r2]
  const double c3 = 10 * r0 - 4 * r1 + 0.5 * r2;
  const double c4 = -15 * r0 + 7 * r1 - r2;
  const double c5 = 6 * r0 - 3 * r1 + 0.5 * r2;
  return {c0, c1, c2, c3, c4, c5};
}

inline bool check_grid(WarpProfile& w, const WarpOptions& opts) {
  w.grid.clear();
  const double step = -w.r_T / opts.grid;
  for (int i = 1; i <= opts.grid; ++i) w.grid.push_back(w.eval(i == opts.grid ? 0.0 : w.r_T + i * step));
  w.max_abs_f = 0;
  for (const auto& s : w.grid) w.max_abs_f = std::max(w.max_abs_f, std::abs(s.f));
  const double tol = opts.tolerance * w.max_abs_f;
  w.min_fpp_fd = INFINITY;
  bool ok = true;
  for (std::size_t i = 0; i < w.grid.size(); ++i) {
    const auto& s = w.grid[i];
    if (!(s.f > 0) || !(s.fp > 0) || s.fpp < -tol) ok = false;
    if (i + 1 < w.grid.size() && !(w.grid[i + 1].f - s.f > 0)) ok = false;
    if (i > 0 && i + 1 < w.grid.size()) {
      const double fd = (w.grid[i + 1].f - 2 * s.f + w.grid[i - 1].f) / (step * step);
      w.min_fpp_fd = std::min(w.min_fpp_fd, fd);
      if (fd < -tol) ok = false;
    }
  }
  return ok;
}

/// Bridge with f''(0) = ca, f''(1) = cb and bumps solving the moment conditions.
inline bool moment_bridge(WarpProfile& w, int n, int m) {
  const auto a = w.eval(w.r_a);
  const double eb = std::exp(w.r_b);
  const double len = w.r_b - w.r_a;
  const double ca = a.fpp;
  const double cb = eb;
  const double D1 = (eb - a.fp) / len;                   // ∫ f'' dt
  const double D0 = (eb - a.f - a.fp * len) / (len * len);  // ∫ (1-t) f'' dt
  auto beta_fn = [](double x, double y) { return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)); };
  // coefficients of ∫ f'' and ∫ (1-t) f'' for each term
  const double a1 = 1.0 / (n + 1), a2 = 1.0 / (n + 2);                    // (1-t)^n
  const double b1 = 1.0 / (n + 1), b2 = 1.0 / ((n + 1.0) * (n + 2));      // t^n
  const double u1 = beta_fn(2, m + 1), u2 = beta_fn(2, m + 2);            // t(1-t)^m
  const double v1 = beta_fn(m + 1, 2), v2 = beta_fn(m + 1, 3);            // t^m(1-t)
  const double rhs1 = D1 - ca * a1 - cb * b1;
  const double rhs2 = D0 - ca * a2 - cb * b2;
  const double det = u1 * v2 - u2 * v1;
  if (std::abs(det) < 1e-300) return false;
  const double alpha = (rhs1 * v2 - rhs2 * v1) / det;
  const double beta = (u1 * rhs2 - u2 * rhs1) / det;
  if (!(alpha >= 0) || !(beta >= 0)) return false;
  w.kind = BridgeKind::Moment;
  w.n = n;
  w.m = m;
  w.ca = ca;
  w.cb = cb;
  w.alpha = alpha;
  w.beta = beta;
  return true;
}

}  // namespace detail

/// Builds f and checks f > 0, f' > 0, f'' >= -tol·max|f| on the grid r_T + i·|r_T|/grid, i = 1..grid.
inline WarpProfile warp_profile(double L, double r_T, const WarpOptions& opts = {}) {
  const double two_pi = 2 * std::numbers::pi;
  if (!(L > two_pi)) throw DomainError("warp_profile: L must exceed 2pi");
  if (!(r_T > -L / two_pi && r_T < -1)) throw DomainError("warp_profile: r_T must lie in (-L/2pi, -1)");
  if (opts.grid < 3) throw std::invalid_argument("warp_profile: grid must have at least 3 points");
  WarpProfile w;
  w.L = L;
  w.r_T = r_T;
  const double span = -r_T;
  const std::vector<double> left = {0.05, 0.1, 0.02, 0.15, 0.2, 0.01};
  const std::vector<double> right = {0.001, 0.005, 0.01, 0.02, 0.05, 0.1};
  double best_violation = -INFINITY;
  // Quintic schedule.
  for (double da : left)
    for (double db : right) {
      w.r_a = r_T + da * span;
      w.r_b = -db * span;
      if (!(w.r_a < w.r_b)) continue;
      const auto a = w.eval(w.r_a);
      const double len = w.r_b - w.r_a;
      const double eb = std::exp(w.r_b);
      w.kind = BridgeKind::Quintic;
      w.quintic = detail::quintic_hermite(a.f, a.fp * len, a.fpp * len * len, eb, eb * len, eb * len * len);
      ++w.attempts;
      if (detail::check_grid(w, opts)) return w;
      best_violation = std::max(best_violation, w.min_fpp_fd);
    }
  // Moment-matched schedule.
  for (double da : left)
    for (double db : right)
      for (int n : {64, 128, 32, 256})
        for (int m : {64, 8, 16, 32, 4, 128}) {
          w.r_a = r_T + da * span;
          w.r_b = -db * span;
          if (!(w.r_a < w.r_b)) continue;
          ++w.attempts;
          if (!detail::moment_bridge(w, n, m)) continue;
          if (detail::check_grid(w, opts)) return w;
          best_violation = std::max(best_violation, w.min_fpp_fd);
        }
  throw DomainError("warp_profile: no bridge in the schedule is convex; best second difference " +
                    std::to_string(best_violation));
}

/// Profiles keyed by boundary isometry class (the length L): equal classes share one profile.
class WarpProfileCache {
 public:
  const WarpProfile& get(double L, const WarpOptions& opts = {}) {
    auto it = cache_.find(L);
    if (it != cache_.end()) return it->second;
    const double r_T = midpoint_r_T(L);
    return cache_.emplace(L, warp_profile(L, r_T, opts)).first->second;
  }
  static double midpoint_r_T(double L) { return (-L / (2 * std::numbers::pi) - 1) / 2; }

 private:
  std::map<double, WarpProfile> cache_;
};

}  // namespace coxref
